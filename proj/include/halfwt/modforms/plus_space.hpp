#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "halfwt/arith/matrix.hpp"
#include "halfwt/arith/packed_series.hpp"
#include "halfwt/modforms/generators.hpp"

namespace halfwt::modforms {

using arith::PackedSeries;
using arith::RationalMatrix;

/// Exponents of the monomial theta^a F^b with a + 4b = 2 ell + 1.
struct MonomialExponent {
  int a = 0;
  int b = 0;
};

/// Ordered by b ascending: ell = 6 gives (13,0), (9,1), (5,2), (1,3).
std::vector<MonomialExponent> monomial_exponents(int ell);

/// Calls visit(i, theta^a_i F^b_i) for every monomial, in monomial_exponents
/// order, each packed to precision N. Only a few packed series are alive at
/// any time, so this is the path used for large N.
void for_each_monomial(int ell, std::size_t N,
                       const std::function<void(std::size_t, const PackedSeries&)>& visit);

/// theta^(r + 4j), j = 0, 1, ..., to a fixed precision, with r = 1 or 3. Every
/// weight ell with 2 ell + 1 = r mod 4 uses a prefix of this chain, so
/// assembling several weights can share one instance. Extended on demand.
class ThetaPowers {
 public:
  ThetaPowers(int residue, std::size_t N);

  int residue() const noexcept { return residue_; }
  std::size_t precision() const noexcept { return N_; }
  const PackedSeries& get(std::size_t j);
  std::size_t bytes() const;

 private:
  int residue_;
  std::size_t N_;
  PackedSeries theta4_;
  std::vector<PackedSeries> powers_;
};

/// For each column t of `weights` (rows in monomial_exponents order), the
/// integer series sum_m weights[m][t] theta^a_m F^b_m to precision N. Few
/// columns use Horner's rule in F on the way up the theta^4 chain, which
/// avoids the separate F-power chain; otherwise the monomials are visited.
/// A matching `cache` (same residue and precision) supplies the theta powers.
std::vector<PackedSeries> combine_monomials(int ell, const std::vector<std::vector<Integer>>& weights,
                                            std::size_t N, ThetaPowers* cache = nullptr);

/// theta^a F^b truncated to N, in monomial_exponents order.
std::vector<ExactSeries> monomial_basis(int ell, std::size_t N);

/// dim M_w(SL2(Z)) and dim S_w(SL2(Z)) for even w >= 0.
int dim_modular_forms(int weight);
int dim_cusp_forms(int weight);

/// Number of leading coefficients constrained when cutting out S^+.
std::size_t constraint_bound(int ell);

class DimensionError : public CertificateError {
 public:
  using CertificateError::CertificateError;
};

/// Reduced row-echelon basis of the plus-space cusp forms of weight ell + 1/2.
struct PlusCuspBasis {
  int ell = 0;
  std::vector<MonomialExponent> monomials;
  /// Row i holds the monomial coordinates of forms[i].
  RationalMatrix coords;
  std::vector<ExactSeries> forms;
  /// forms[i] has coefficient 1 at leads[i] and 0 at every other lead.
  std::vector<std::size_t> leads;

  std::size_t dimension() const { return forms.size(); }
  std::size_t precision() const { return forms.empty() ? 0 : forms.front().precision(); }
  std::size_t max_lead() const { return leads.empty() ? 0 : leads.back(); }
};

/// Cuts S^+ out of the monomial span by a(0) = 0 and a(n) = 0 for
/// n <= constraint_bound(ell) with (-1)^ell n = 2, 3 mod 4, then checks the
/// dimension against dim S_{2 ell}(SL2(Z)); a mismatch throws DimensionError.
PlusCuspBasis plus_cusp_basis(int ell, std::size_t N);

/// Same basis (same monomial coordinates) expanded to precision N.
PlusCuspBasis expand_basis(const PlusCuspBasis& basis, std::size_t N);

/// True when (-1)^ell n = 2 or 3 mod 4, where the plus condition forces a(n) = 0.
bool plus_forbidden(int ell, std::size_t n);

}  // namespace halfwt::modforms
