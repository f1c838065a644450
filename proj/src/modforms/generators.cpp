#include "halfwt/modforms/generators.hpp"

#include <stdexcept>

namespace halfwt::modforms {

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::theta: return "theta";
    case GeneratorKind::F: return "F";
    case GeneratorKind::E4: return "E4";
    case GeneratorKind::E6: return "E6";
    case GeneratorKind::Delta: return "Delta";
  }
  return "?";
}

std::vector<Integer> divisor_sigma(unsigned k, std::size_t N) {
  std::vector<Integer> s(N, Integer(0));
  Integer dk;
  for (std::size_t d = 1; d < N; ++d) {
    mpz_ui_pow_ui(dk.get_mpz_t(), d, k);
    for (std::size_t m = d; m < N; m += d) s[m] += dk;
  }
  return s;
}

std::vector<std::uint64_t> divisor_sigma1(std::size_t N) {
  std::vector<std::uint64_t> s(N, 0);
  for (std::size_t d = 1; d < N; ++d)
    for (std::size_t m = d; m < N; m += d) s[m] += d;
  return s;
}

IntegerSeries theta_series(std::size_t N) {
  IntegerSeries t(N);
  for (std::size_t m = 0; m * m < N; ++m) t[m * m] = m == 0 ? 1 : 2;
  return t;
}

IntegerSeries f_series(std::size_t N) {
  const auto s = divisor_sigma1(N);
  IntegerSeries f(N);
  for (std::size_t n = 1; n < N; n += 2) f[n] = Integer(static_cast<unsigned long>(s[n]));
  return f;
}

IntegerSeries eisenstein_e4(std::size_t N) {
  auto s = divisor_sigma(3, N);
  IntegerSeries e(N);
  for (std::size_t n = 1; n < N; ++n) e[n] = 240 * s[n];
  if (N > 0) e[0] = 1;
  return e;
}

IntegerSeries eisenstein_e6(std::size_t N) {
  auto s = divisor_sigma(5, N);
  IntegerSeries e(N);
  for (std::size_t n = 1; n < N; ++n) e[n] = -504 * s[n];
  if (N > 0) e[0] = 1;
  return e;
}

IntegerSeries delta_series(std::size_t N) {
  const auto e4 = eisenstein_e4(N), e6 = eisenstein_e6(N);
  auto d = arith::series_mul(arith::series_mul(e4, e4, N), e4, N) - arith::series_mul(e6, e6, N);
  for (std::size_t n = 0; n < N; ++n) {
    if (!mpz_divisible_ui_p(d[n].get_mpz_t(), 1728))
      throw std::logic_error("delta_series: E4^3 - E6^2 not divisible by 1728");
    mpz_divexact_ui(d[n].get_mpz_t(), d[n].get_mpz_t(), 1728);
  }
  return d;
}

GeneratorSeries generator(GeneratorKind kind, std::size_t N) {
  IntegerSeries s;
  switch (kind) {
    case GeneratorKind::theta: s = theta_series(N); break;
    case GeneratorKind::F: s = f_series(N); break;
    case GeneratorKind::E4: s = eisenstein_e4(N); break;
    case GeneratorKind::E6: s = eisenstein_e6(N); break;
    case GeneratorKind::Delta: s = delta_series(N); break;
  }
  return {kind, arith::to_rational(s)};
}

}  // namespace halfwt::modforms
