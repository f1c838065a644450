#include <random>

#include "doctest.h"
#include "halfwt/modforms/eigenforms.hpp"
#include "halfwt/shimura/lift.hpp"

using namespace halfwt;
using namespace halfwt::shimura;
using arith::NumberField;
using arith::Rational;

namespace {

AlgebraicNumber q(long v) { return AlgebraicNumber::constant(NumberField::rationals(), Rational(v)); }

// Kronecker symbol (m/d) from its definition: Euler's criterion on each odd
// prime factor of d, (m/2) from m mod 8.
int kronecker_by_definition(long m, long d) {
  int result = 1;
  for (long p = 2; d > 1; ++p) {
    for (; d % p == 0; d /= p) {
      const long r = ((m % p) + p) % p;
      if (r == 0) return 0;
      if (p == 2) {
        const long m8 = ((m % 8) + 8) % 8;
        result *= (m8 == 1 || m8 == 7) ? 1 : -1;
        continue;
      }
      long acc = 1, base = r;
      for (long e = (p - 1) / 2; e; e >>= 1) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
      }
      result *= acc == 1 ? 1 : -1;
    }
  }
  return result;
}

}  // namespace

TEST_SUITE_BEGIN("shimura");

TEST_CASE("lift character is the Kronecker symbol") {
  for (long m : {1L, -1L, 5L, -3L, 13L, -7L, 21L, -15L, 8L})
    for (long d = 1; d < 200; ++d) REQUIRE(lift_character(m, static_cast<std::uint64_t>(d)) == kronecker_by_definition(m, d));
  CHECK_THROWS(lift_character(5, 0));
}

TEST_CASE("lift of the weight 13/2 form") {
  const std::size_t depth = 200;
  const auto f = modforms::extract_eigenforms(6, 5 * depth * depth + 1).front();
  const auto A = shimura_lift(f, 1, 10);
  CHECK(A[1] == f.coefficient(1));
  CHECK(A[2] == f.coefficient(4) + q(32) * f.coefficient(1));
  CHECK(A[2] == q(-24) * A[1]);

  const auto g = level1_partner(f, depth + 1);
  for (std::uint64_t t : {1u, 5u}) {
    const auto r = verify_lift(f, g, t, depth);
    CHECK(r.certified());
    CHECK(r.first_mismatch == 0);
    REQUIRE(r.matched_eigenvalues.size() == 2);
    CHECK(r.matched_eigenvalues[0].second == q(252));
    CHECK(r.matched_eigenvalues[1].second == q(4830));
    REQUIRE(!r.lift_eigenvalues.empty());
    CHECK(r.lift_eigenvalues[0].second == q(-24));
  }
  CHECK(lift_parameters(f, 3) == std::vector<std::uint64_t>{1, 5, 13});
  CHECK_THROWS_AS(shimura_lift(f, 9, 10), std::invalid_argument);
  CHECK_THROWS_AS(shimura_lift(f, 3, 10), std::invalid_argument);
  CHECK_THROWS_AS(shimura_lift(f, 13, depth), arith::PrecisionError);
}

TEST_CASE("odd weight lift uses the negative discriminant") {
  const std::size_t depth = 60;
  const auto f = modforms::extract_eigenforms(9, 11 * depth * depth + 1).front();
  const auto ts = lift_parameters(f, 2);
  REQUIRE(ts.size() == 2);
  const auto g = level1_partner(f, depth + 1);
  for (auto t : ts) CHECK(verify_lift(f, g, t, depth).certified());
}

TEST_CASE("quadratic field lifts") {
  const std::size_t depth = 40;
  const auto forms = modforms::extract_eigenforms(12, 5 * depth * depth + 1);
  for (const auto& f : forms) {
    const auto g = level1_partner(f, depth + 1);
    CHECK(verify_lift(f, g, 1, depth).certified());
  }
}

TEST_CASE("pairing with a tampered partner is rejected") {
  const auto f = modforms::extract_eigenforms(6, 2000).front();
  auto g = level1_partner(f, 20);
  auto coeffs = *g.coeffs;
  coeffs[5] = q(4831);
  g.coeffs = std::make_shared<const std::vector<AlgebraicNumber>>(coeffs);
  CHECK_THROWS_AS(verify_lift(f, g, 1, 19), PairingError);
}

TEST_CASE("non-eigenform control is rejected") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> num(-100, 100), den(1, 20);
  const std::size_t depth = 40;
  const auto basis = modforms::plus_cusp_basis(12, 400);
  const auto forms = modforms::extract_eigenforms(12, 200);
  const auto g = level1_partner(forms[0], depth + 1);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Rational> c{Rational(num(rng), den(rng)), Rational(num(rng) | 1, den(rng))};
    for (auto& x : c) x.canonicalize();
    const auto f = modforms::plus_space_element(basis, c, depth * depth + 1);
    const auto r = compare_lift(f, g, 1, depth);
    CHECK_FALSE(r.certified());
    CHECK(r.first_mismatch > 0);
  }
}

TEST_SUITE_END();
