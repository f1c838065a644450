#include "halfwt/modforms/hecke.hpp"

#include <string>

namespace halfwt::modforms {

int kronecker(long a, long n) { return mpz_si_kronecker(a, Integer(n).get_mpz_t()); }

ExactSeries hecke_T_p2(const ExactSeries& f, int p, int ell, std::size_t N_out) {
  if (p == 2) throw std::invalid_argument("hecke_T_p2: p = 2 divides the level");
  if (p < 3 || !mpz_probab_prime_p(Integer(p).get_mpz_t(), 30))
    throw std::invalid_argument("hecke_T_p2: p must be an odd prime");
  const std::size_t p2 = static_cast<std::size_t>(p) * static_cast<std::size_t>(p);
  f.require_precision(p2 * N_out);

  Integer pl1, p2l1;
  mpz_ui_pow_ui(pl1.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(ell - 1));
  mpz_ui_pow_ui(p2l1.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(2 * ell - 1));
  const long sign = ell % 2 == 0 ? 1 : -1;

  ExactSeries out(N_out);
  for (std::size_t n = 0; n < N_out; ++n) {
    Rational v = f[p2 * n];
    const int chi = kronecker(sign * static_cast<long>(n % static_cast<std::size_t>(p)), p);
    if (chi != 0) v += chi * pl1 * f[n];
    if (n % p2 == 0) v += p2l1 * f[n / p2];
    out[n] = v;
  }
  return out;
}

std::size_t hecke_precision(const PlusCuspBasis& basis, int p) {
  const std::size_t p2 = static_cast<std::size_t>(p) * static_cast<std::size_t>(p);
  return p2 * (std::max(basis.max_lead(), constraint_bound(basis.ell)) + 1);
}

RationalMatrix hecke_matrix(const PlusCuspBasis& basis, int p) {
  const std::size_t d = basis.dimension();
  if (d == 0) throw std::invalid_argument("hecke_matrix: empty basis");
  const std::size_t p2 = static_cast<std::size_t>(p) * static_cast<std::size_t>(p);
  const std::size_t n_out = basis.precision() / p2;
  if (n_out <= basis.max_lead())
    throw arith::PrecisionError(p2 * (basis.max_lead() + 1), basis.precision());

  RationalMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto image = hecke_T_p2(basis.forms[i], p, basis.ell, n_out);
    for (std::size_t j = 0; j < d; ++j) m(j, i) = image[basis.leads[j]];
    // The image must be the stated combination of basis forms everywhere.
    for (std::size_t n = 0; n < n_out; ++n) {
      Rational expect = 0;
      for (std::size_t j = 0; j < d; ++j) expect += m(j, i) * basis.forms[j][n];
      if (expect != image[n])
        throw DimensionError("T(" + std::to_string(p) + "^2) image leaves the span of the basis at q^" +
                             std::to_string(n) + "; basis not linearly independent at the available precision");
    }
  }
  return m;
}

RationalMatrix hecke_matrix(int ell, int p) {
  const auto small = plus_cusp_basis(ell, 100);
  return hecke_matrix(expand_basis(small, hecke_precision(small, p)), p);
}

}  // namespace halfwt::modforms
