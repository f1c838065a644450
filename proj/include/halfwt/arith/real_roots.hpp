#pragma once

#include <vector>

#include "halfwt/arith/interval.hpp"
#include "halfwt/arith/number_field.hpp"

namespace halfwt::arith {

/// A real embedding of Q[x]/(f): a rational interval (lo, hi) containing
/// exactly one real root of f, certified by a sign change and a Sturm count.
struct RealEmbedding {
  Polynomial poly;  ///< squarefree polynomial whose root is isolated
  FieldPtr field;   ///< may be empty when isolating roots of a bare polynomial
  Rational lo;
  Rational hi;
  int digits = 0;  ///< (hi - lo) / |root| < 10^-digits

  /// Shrinks the interval until it certifies the requested number of digits.
  void refine(int digits);
  /// Shrinks until hi - lo < 2^-bits (absolute width).
  void refine_absolute(long bits);
  double approx() const;
};

/// Number of distinct real roots of squarefree f in the open interval (a, b);
/// f must not vanish at a or b.
int sturm_count(const Polynomial& f, const Rational& a, const Rational& b);

/// All real roots of f (made squarefree first), ascending, each refined to
/// the requested relative width.
std::vector<RealEmbedding> isolate_real_roots(const Polynomial& f, int digits);

/// Encloses the image of a under the embedding, with endpoints at `prec` bits.
Interval enclose(const AlgebraicNumber& a, const RealEmbedding& e, mpfr_prec_t prec);

/// Image of a under the embedding to `digits` significant digits, refining
/// the isolating interval as needed. Returns exactly 0 for a = 0.
double embed(const AlgebraicNumber& a, RealEmbedding& e, int digits = 15);

/// floor(x * 2^bits) / 2^bits
Rational round_dyadic(const Rational& x, long bits);

}  // namespace halfwt::arith
