#pragma once

#include <string>
#include <vector>

#include "halfwt/arith/polynomial.hpp"

namespace halfwt::arith {

enum class Irreducibility { irreducible, reducible, undetermined };

struct IrreducibilityCertificate {
  Irreducibility status = Irreducibility::undetermined;
  std::string evidence;  ///< human-readable reason, e.g. "irreducible mod 7"
};

/// Primes tried first for a single irreducible reduction.
inline constexpr int kCertificatePrimes[] = {3, 5, 7, 11, 13, 17, 19, 23};

/// Tries, in order: degree 1; an irreducible reduction modulo one of
/// kCertificatePrimes; a rational root (reducible); degree <= 3 without a
/// rational root; incompatible factor-degree patterns over primes < 500.
IrreducibilityCertificate certify_irreducibility(const Polynomial& f);

/// True/false when certified; throws IrreducibilityError when undetermined.
bool is_irreducible(const Polynomial& f);

/// Degrees of the irreducible factors of f mod p (f squarefree mod p,
/// p not dividing the leading coefficient), ascending; empty if those
/// conditions fail.
std::vector<int> factor_degrees_mod_p(const std::vector<Integer>& f, unsigned long p);

/// Rational roots of f, ascending.
std::vector<Rational> rational_roots(const Polynomial& f);

}  // namespace halfwt::arith
