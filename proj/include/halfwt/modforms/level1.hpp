#pragma once

#include <memory>
#include <vector>

#include "halfwt/modforms/eigenforms.hpp"

namespace halfwt::modforms {

/// Normalized (c(1) = 1) Hecke eigenform in S_weight(SL2(Z)).
struct Level1Eigenform {
  int weight = 0;
  int index = 1;
  FieldPtr field;
  RealEmbedding embedding;
  std::shared_ptr<const std::vector<AlgebraicNumber>> coeffs;

  std::size_t precision() const { return coeffs ? coeffs->size() : 0; }
  const AlgebraicNumber& coefficient(std::size_t n) const { return coeffs->at(n); }
};

/// Reduced row-echelon basis of S_weight(SL2(Z)) built from Delta E4^i E6^j;
/// leads receives the leading indices.
std::vector<ExactSeries> level1_cusp_basis(int weight, std::size_t N, std::vector<std::size_t>* leads = nullptr);

/// T_p on that basis (column convention), c(pn) + p^(weight-1) c(n/p).
RationalMatrix level1_hecke_matrix(int weight, int p);

/// Eigenforms split by T_p. With `field` given, the charpoly of T_p must equal
/// its defining polynomial and the forms are expressed over it, eigenvalue of
/// T_p = generator; otherwise the field is built from the charpoly.
std::vector<Level1Eigenform> level1_eigenforms(int weight, std::size_t N, int p = 2,
                                               const FieldPtr& field = nullptr);

}  // namespace halfwt::modforms
