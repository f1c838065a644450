#include "halfwt/shimura/lift.hpp"

#include <gmp.h>

#include "halfwt/coeffs/sieve.hpp"

namespace halfwt::shimura {

int lift_character(long m, std::uint64_t d) {
  if (d == 0) throw std::invalid_argument("lift_character: d must be positive");
  return mpz_si_kronecker(m, Integer(static_cast<unsigned long>(d)).get_mpz_t());
}

std::size_t lift_precision(std::uint64_t t, std::size_t depth) { return static_cast<std::size_t>(t) * depth * depth + 1; }

namespace {

void check_parameter(const HalfIntegralForm& f, std::uint64_t t, std::size_t depth) {
  if (!coeffs::is_squarefree(t)) throw std::invalid_argument("lift parameter t = " + std::to_string(t) + " is not squarefree");
  if (t % 4 != coeffs::recorded_residue(f.ell))
    throw std::invalid_argument("lift parameter t = " + std::to_string(t) + " is not a recorded index for " + f.label);
  if (f.precision() < lift_precision(t, depth)) throw arith::PrecisionError(lift_precision(t, depth), f.precision());
}

}  // namespace

std::vector<AlgebraicNumber> shimura_lift(const HalfIntegralForm& f, std::uint64_t t, std::size_t depth) {
  check_parameter(f, t, depth);
  const long D = (f.ell % 2 == 0 ? 1L : -1L) * static_cast<long>(t);
  std::vector<AlgebraicNumber> a_tm2(depth + 1);
  for (std::size_t m = 1; m <= depth; ++m) a_tm2[m] = f.coefficient(static_cast<std::size_t>(t) * m * m);

  std::vector<AlgebraicNumber> out(depth + 1, AlgebraicNumber::constant(f.field, 0));
  Integer dpow;
  for (std::size_t d = 1; d <= depth; ++d) {
    const int chi = lift_character(D, d);
    if (chi == 0) continue;
    mpz_ui_pow_ui(dpow.get_mpz_t(), d, static_cast<unsigned long>(f.ell - 1));
    const AlgebraicNumber w(Rational(chi * dpow));
    for (std::size_t n = d; n <= depth; n += d) out[n] += w * a_tm2[n / d];
  }
  return out;
}

LiftReport compare_lift(const HalfIntegralForm& f, const Level1Eigenform& g, std::uint64_t t, std::size_t depth) {
  if (g.weight != 2 * f.ell)
    throw std::invalid_argument("lift of " + f.label + " has weight " + std::to_string(2 * f.ell) + ", not " +
                                std::to_string(g.weight));
  if (g.precision() <= depth) throw arith::PrecisionError(depth + 1, g.precision());
  LiftReport r;
  r.label = f.label;
  r.t = t;
  r.depth = depth;
  r.max_abs_discrepancy = 0;
  const auto A = shimura_lift(f, t, depth);
  const AlgebraicNumber at = f.coefficient(static_cast<std::size_t>(t));
  for (std::size_t n = 1; n <= depth; ++n) {
    const AlgebraicNumber delta = A[n] - at * g.coefficient(n);
    for (const auto& c : delta.coords()) {
      const Rational m = abs(c);
      if (m > r.max_abs_discrepancy) r.max_abs_discrepancy = m;
    }
    if (r.first_mismatch == 0 && !delta.is_zero()) r.first_mismatch = n;
  }
  if (!at.is_zero()) {
    for (int p : {2, 3, 5, 7})
      if (static_cast<std::size_t>(p) <= depth) r.lift_eigenvalues.emplace_back(p, A[static_cast<std::size_t>(p)] / A[1]);
  }
  return r;
}

LiftReport verify_lift(const HalfIntegralForm& f, const Level1Eigenform& g, std::uint64_t t, std::size_t depth) {
  std::vector<std::pair<int, AlgebraicNumber>> matched;
  for (int p : {3, 5}) {
    const auto it = f.eigenvalues.find(p);
    if (it == f.eigenvalues.end())
      throw PairingError("wrong eigenform pairing: " + f.label + " has no T(" + std::to_string(p) + "^2) eigenvalue");
    if (g.precision() <= static_cast<std::size_t>(p)) throw arith::PrecisionError(static_cast<std::size_t>(p) + 1, g.precision());
    if (it->second != g.coefficient(static_cast<std::size_t>(p)))
      throw PairingError("wrong eigenform pairing: T(" + std::to_string(p) + "^2) eigenvalue of " + f.label + " is " +
                         it->second.to_string() + " but the level-1 form has T_" + std::to_string(p) + " eigenvalue " +
                         g.coefficient(static_cast<std::size_t>(p)).to_string());
    matched.emplace_back(p, it->second);
  }
  LiftReport r = compare_lift(f, g, t, depth);
  r.matched_eigenvalues = std::move(matched);
  return r;
}

std::vector<std::uint64_t> lift_parameters(const HalfIntegralForm& f, std::size_t count) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t t = coeffs::recorded_residue(f.ell); t < f.precision() && out.size() < count; t += 4)
    if (coeffs::is_squarefree(t) && !f.coefficient(static_cast<std::size_t>(t)).is_zero()) out.push_back(t);
  return out;
}

Level1Eigenform level1_partner(const HalfIntegralForm& f, std::size_t N) {
  std::vector<Level1Eigenform> forms;
  try {
    forms = modforms::level1_eigenforms(2 * f.ell, N, 3, f.field);
  } catch (const CertificateError& e) {
    throw PairingError(std::string("wrong eigenform pairing: ") + e.what());
  }
  for (auto& g : forms)
    if (g.index == f.index) return g;
  throw PairingError("wrong eigenform pairing: no level-1 form with index " + std::to_string(f.index));
}

}  // namespace halfwt::shimura
