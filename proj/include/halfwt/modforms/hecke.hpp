#pragma once

#include "halfwt/modforms/plus_space.hpp"

namespace halfwt::modforms {

/// Kronecker symbol (a | n).
int kronecker(long a, long n);

/// T(p^2) on weight ell + 1/2, level 4, trivial character:
///   b(n) = a(p^2 n) + ((-1)^ell n | p) p^(ell-1) a(n) + p^(2 ell - 1) a(n / p^2).
/// Needs f.precision() >= p^2 * N_out; p = 2 is rejected.
ExactSeries hecke_T_p2(const ExactSeries& f, int p, int ell, std::size_t N_out);

/// Precision at which hecke_matrix(basis, p) can be formed.
std::size_t hecke_precision(const PlusCuspBasis& basis, int p);

/// Matrix of T(p^2) acting on the basis: column i holds the coordinates of
/// T(p^2) forms[i], so an eigenvector v satisfies M v = lambda v. The
/// expansion is checked over every coefficient the precision allows.
RationalMatrix hecke_matrix(const PlusCuspBasis& basis, int p);

/// Convenience: builds the basis at the precision T(p^2) needs.
RationalMatrix hecke_matrix(int ell, int p);

}  // namespace halfwt::modforms
