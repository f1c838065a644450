#include <random>

#include "doctest.h"
#include "halfwt/arith/matrix.hpp"
#include "halfwt/modforms/eigenforms.hpp"
#include "halfwt/modforms/generators.hpp"
#include "halfwt/modforms/hecke.hpp"
#include "halfwt/modforms/level1.hpp"
#include "halfwt/modforms/plus_space.hpp"

using namespace halfwt;
using namespace halfwt::modforms;
using arith::ExactSeries;
using arith::Integer;
using arith::NumberField;
using arith::Rational;

namespace {

// tau(n) for n < N from q prod (1 - q^n)^24, plain integer arithmetic.
std::vector<Integer> tau_by_product(std::size_t N) {
  std::vector<Integer> p(N, 0);
  p[0] = 1;
  for (std::size_t n = 1; n < N; ++n)
    for (int k = 0; k < 24; ++k)
      for (std::size_t i = N; i-- > n;) p[i] -= p[i - n];
  std::vector<Integer> tau(N, 0);
  for (std::size_t n = 1; n < N; ++n) tau[n] = p[n - 1];
  return tau;
}

Integer sigma(unsigned k, std::size_t n) {
  Integer s = 0, pw;
  for (std::size_t d = 1; d <= n; ++d)
    if (n % d == 0) {
      mpz_ui_pow_ui(pw.get_mpz_t(), d, k);
      s += pw;
    }
  return s;
}

std::vector<Integer> naive_mul(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  std::vector<Integer> out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Charpoly coefficients (trace, det) of T_3 on S_24 from the basis
// Delta E4^3, Delta^2 built here from scratch.
std::pair<Rational, Rational> level1_t3_weight24() {
  const std::size_t N = 3 * 3 + 1;
  const auto tau = tau_by_product(N * 3);
  std::vector<Integer> e4(N * 3, 0);
  e4[0] = 1;
  for (std::size_t n = 1; n < e4.size(); ++n) e4[n] = 240 * sigma(3, n);
  const std::vector<Integer> delta(tau.begin(), tau.end());
  const auto f1 = naive_mul(naive_mul(naive_mul(delta, e4), e4), e4);  // q + ...
  const auto f2 = naive_mul(delta, delta);                              // q^2 + ...
  // Echelon: g1 = f1 - f1[2] f2 has g1[1] = 1, g1[2] = 0; g2 = f2.
  std::vector<Integer> g1(f1.size());
  for (std::size_t n = 0; n < f1.size(); ++n) g1[n] = f1[n] - f1[2] * f2[n];
  Integer p23;
  mpz_ui_pow_ui(p23.get_mpz_t(), 3, 23);
  auto t3 = [&](const std::vector<Integer>& f, std::size_t n) -> Integer {
    Integer v = f[3 * n];
    if (n % 3 == 0) v += p23 * f[n / 3];
    return v;
  };
  // Column j = coordinates of T3 g_j, read off at q^1 and q^2.
  const Rational m00(t3(g1, 1)), m10(t3(g1, 2)), m01(t3(f2, 1)), m11(t3(f2, 2));
  return {m00 + m11, m00 * m11 - m01 * m10};
}

AlgebraicNumber rational(const Rational& q) { return AlgebraicNumber::constant(NumberField::rationals(), q); }

}  // namespace

TEST_SUITE_BEGIN("modforms");

TEST_CASE("generator series match their definitions") {
  const std::size_t N = 200;
  const auto th = theta_series(N);
  const auto F = f_series(N);
  for (std::size_t n = 0; n < N; ++n) {
    const std::size_t r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    const bool square = r * r == n || (r + 1) * (r + 1) == n;
    CHECK(th[n] == (n == 0 ? 1 : square ? 2 : 0));
    CHECK(F[n] == (n % 2 == 1 ? sigma(1, n) : Integer(0)));
  }
  const auto tau = tau_by_product(N);
  const auto delta = delta_series(N);
  for (std::size_t n = 0; n < N; ++n) CHECK(delta[n] == tau[n]);
}

TEST_CASE("Delta oracle values") {
  const auto tau = tau_by_product(12);
  const std::vector<long> expected{0, 1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612};
  for (std::size_t n = 0; n < expected.size(); ++n) CHECK(tau[n] == expected[n]);
}

TEST_CASE("monomial exponents") {
  const auto m6 = monomial_exponents(6);
  REQUIRE(m6.size() == 4);
  const int a6[] = {13, 9, 5, 1}, a7[] = {15, 11, 7, 3};
  for (int b = 0; b < 4; ++b) {
    CHECK(m6[static_cast<std::size_t>(b)].a == a6[b]);
    CHECK(m6[static_cast<std::size_t>(b)].b == b);
  }
  const auto m7 = monomial_exponents(7);
  REQUIRE(m7.size() == 4);
  for (int b = 0; b < 4; ++b) CHECK(m7[static_cast<std::size_t>(b)].a == a7[b]);
  const auto basis = monomial_basis(6, 20);
  CHECK(basis[3].valuation() == 3);
  CHECK(basis[3][3] == 1);
}

TEST_CASE("plus space dimensions") {
  CHECK(plus_cusp_basis(6, 200).dimension() == 1);
  CHECK(dim_cusp_forms(14) == 0);
  CHECK(plus_cusp_basis(7, 200).dimension() == 0);
  CHECK(plus_cusp_basis(12, 400).dimension() == 2);
  for (int w = 12; w <= 60; w += 2) {
    const int expected = (w % 12 == 2 ? w / 12 - 1 : w / 12);
    CHECK(dim_cusp_forms(w) == std::max(expected, 0));
  }
}

TEST_CASE("T(p^2) formula at a single index") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-1000, 1000);
  ExactSeries f(20);
  for (std::size_t n = 0; n < 20; ++n) f[n] = d(rng);
  const auto g = hecke_T_p2(f, 3, 6, 2);
  CHECK(g[1] == f[9] + 243 * f[1]);
  CHECK(hecke_T_p2(ExactSeries(40), 3, 6, 4).is_zero());
}

TEST_CASE("Hecke matrices against the Delta oracle") {
  const auto tau = tau_by_product(12);
  const auto t3 = hecke_matrix(6, 3);
  REQUIRE(t3.rows() == 1);
  CHECK(t3(0, 0) == Rational(tau[3]));
  CHECK(hecke_matrix(6, 5)(0, 0) == Rational(tau[5]));

  const auto m = hecke_matrix(12, 3);
  const auto cp = arith::charpoly(m);
  const auto [trace, det] = level1_t3_weight24();
  REQUIRE(cp.degree() == 2);
  CHECK(cp.coeff(2) == 1);
  CHECK(cp.coeff(1) == -trace);
  CHECK(cp.coeff(0) == det);
  CHECK(arith::charpoly(level1_hecke_matrix(24, 3)) == cp);
}

TEST_CASE("Hecke operators commute") {
  for (int ell : {12, 16}) {
    const auto a = hecke_matrix(ell, 3), b = hecke_matrix(ell, 5);
    CHECK((a * b) == (b * a));
  }
}

TEST_CASE("weight 13/2 eigenform") {
  const auto tau = tau_by_product(12);
  const auto forms = extract_eigenforms(6, 10000, {3, 5, 7, 11});
  REQUIRE(forms.size() == 1);
  const auto& f = forms.front();
  CHECK(f.label == "13/2");
  CHECK(f.eigenvalues.at(3) == rational(Rational(tau[3])));
  CHECK(f.eigenvalues.at(5) == rational(Rational(tau[5])));
  CHECK(f.eigenvalues.at(7) == rational(Rational(tau[7])));
  CHECK(f.eigenvalues.at(11) == rational(Rational(tau[11])));
  CHECK(f.coefficient(0).is_zero());
  std::size_t violations = 0;
  for (std::size_t n = 1; n < 10000; ++n)
    if (plus_forbidden(6, n) && !f.coefficient(n).is_zero()) ++violations;
  CHECK(violations == 0);

  // T(9) f = 252 f on the full verified range.
  const std::size_t M = 10000 / 9;
  ExactSeries s(10000);
  for (std::size_t n = 0; n < 10000; ++n) s[n] = f.coefficient(n).coord(0);
  const auto g = hecke_T_p2(s, 3, 6, M);
  for (std::size_t n = 0; n < M; ++n) CHECK(g[n] == 252 * s[n]);
  // A(2)/A(1) = tau(2) forces a(4) = -56 a(1).
  CHECK(s[4] == -56 * s[1]);
}

TEST_CASE("weight 25/2 has two conjugate forms") {
  const auto forms = extract_eigenforms(12, 2000);
  REQUIRE(forms.size() == 2);
  CHECK(forms[0].field->degree() == 2);
  CHECK(forms[0].label == "25/2(1)");
  CHECK(forms[1].label == "25/2(2)");
  CHECK(forms[0].embedding.approx() < forms[1].embedding.approx());
  for (const auto& f : forms)
    for (std::size_t n = 1; n < 2000; ++n)
      if (plus_forbidden(12, n)) REQUIRE(f.coefficient(n).is_zero());
}

TEST_CASE("weight 61/2 has five forms") {
  const auto sys = eigen_system(30);
  CHECK(sys.basis.dimension() == 5);
  CHECK(sys.charpoly.degree() == 5);
  CHECK(eigenforms_from_system(sys, 200).size() == 5);
}

TEST_CASE("level one eigenforms") {
  const auto delta = level1_eigenforms(12, 11);
  REQUIRE(delta.size() == 1);
  const auto tau = tau_by_product(11);
  for (std::size_t n = 1; n < 11; ++n) CHECK(delta[0].coefficient(n) == rational(Rational(tau[n])));
  CHECK(level1_eigenforms(14, 10).empty());
  const auto w24 = level1_eigenforms(24, 10);
  REQUIRE(w24.size() == 2);
  CHECK(w24[0].field->degree() == 2);
}

TEST_CASE("assembly paths agree with the monomial basis") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 50);
  for (int ell : {6, 9, 12}) {
    const std::size_t N = 600;
    const auto basis = monomial_basis(ell, N);
    std::vector<AlgebraicNumber> coords;
    ExactSeries expected(N);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      Rational c(num(rng), den(rng));
      c.canonicalize();
      if (i == 1) c = 0;
      coords.push_back(rational(c));
      expected += c * basis[i];
    }
    ThetaPowers cache(ell % 2 == 0 ? 1 : 3, N);
    const auto plain = ExactExpansion::assemble(ell, coords, NumberField::rationals(), N);
    const auto cached = ExactExpansion::assemble(ell, coords, NumberField::rationals(), N, &cache);
    for (std::size_t n = 0; n < N; ++n) {
      REQUIRE(plain->coefficient(n).coord(0) == expected[n]);
      REQUIRE(cached->coefficient(n).coord(0) == expected[n]);
    }
  }
}

TEST_SUITE_END();
