#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "halfwt/arith/real_roots.hpp"
#include "halfwt/modforms/hecke.hpp"

namespace halfwt::modforms {

using arith::AlgebraicNumber;
using arith::FieldPtr;
using arith::Polynomial;
using arith::RealEmbedding;

/// K-valued q-expansion a(n) = sum_t x^t C_t(n) / D with packed integer
/// series C_t.
class ExactExpansion {
 public:
  /// Expands sum_m coords[m] * theta^a_m F^b_m to precision N.
  static std::shared_ptr<const ExactExpansion> assemble(int ell, const std::vector<AlgebraicNumber>& coords,
                                                        const FieldPtr& field, std::size_t N,
                                                        ThetaPowers* cache = nullptr);

  std::size_t precision() const noexcept { return precision_; }
  const FieldPtr& field() const noexcept { return field_; }
  const Integer& denominator() const noexcept { return denominator_; }
  /// C_t(n) for t < field degree.
  std::vector<Integer> numerators(std::size_t n) const;
  AlgebraicNumber coefficient(std::size_t n) const;
  /// Approximate memory held by the packed series.
  std::size_t bytes() const;

 private:
  FieldPtr field_;
  std::size_t precision_ = 0;
  Integer denominator_ = 1;
  std::vector<arith::PackedSeries> series_;
};

/// Exact Hecke data of S^+ for one weight, computed at small precision.
struct EigenSystem {
  int ell = 0;
  PlusCuspBasis basis;
  RationalMatrix t9;
  Polynomial charpoly;
  FieldPtr field;
  /// Eigenvector with eigenvalue x in the reduced basis, first nonzero entry 1.
  std::vector<AlgebraicNumber> basis_coords;
  /// The same form in the theta^a F^b monomial basis.
  std::vector<AlgebraicNumber> monomial_coords;
  /// p -> eigenvalue of T(p^2), as an element of the field.
  std::map<int, AlgebraicNumber> eigenvalues;
};

/// Hecke matrix for p = 3, its characteristic polynomial (certified
/// irreducible), the eigenvector over K = Q[x]/(charpoly) and the T(p^2)
/// eigenvalues for every p in `primes`.
EigenSystem eigen_system(int ell, const std::vector<int>& primes = {3, 5});

/// Eigenvalue of T(p^2) on the eigenvector of `sys`, computed exactly.
AlgebraicNumber hecke_eigenvalue(const EigenSystem& sys, int p);

struct HalfIntegralForm {
  int two_k = 0;
  int ell = 0;
  std::string label;
  int index = 1;  ///< 1-based position among the real embeddings, ascending
  FieldPtr field;
  std::vector<AlgebraicNumber> monomial_coords;
  RealEmbedding embedding;
  std::shared_ptr<const ExactExpansion> expansion;
  std::map<int, AlgebraicNumber> eigenvalues;

  std::size_t precision() const { return expansion ? expansion->precision() : 0; }
  AlgebraicNumber coefficient(std::size_t n) const { return expansion->coefficient(n); }
};

/// Label "2k/2", with "(j)" appended when the weight has several forms.
std::string form_label(int ell, int index, int count);

/// One form per real root of the charpoly, ascending, all sharing one expansion.
std::vector<HalfIntegralForm> eigenforms_from_system(const EigenSystem& sys, std::size_t N,
                                                     ThetaPowers* cache = nullptr);

/// eigen_system followed by assembly to precision N.
std::vector<HalfIntegralForm> extract_eigenforms(int ell, std::size_t N,
                                                 const std::vector<int>& primes = {3, 5},
                                                 ThetaPowers* cache = nullptr);

/// A plus-space element that need not be an eigenform (rational coordinates in
/// the reduced basis); used as a negative control.
HalfIntegralForm plus_space_element(const PlusCuspBasis& basis, const std::vector<Rational>& coords,
                                    std::size_t N);

}  // namespace halfwt::modforms
