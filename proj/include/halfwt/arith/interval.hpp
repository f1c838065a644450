#pragma once

#include <mpfr.h>

#include <string>

#include "halfwt/arith/series.hpp"

namespace halfwt::arith {

/// Closed real interval [lo, hi] with MPFR endpoints rounded outward.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 128);
  Interval(const Rational& q, mpfr_prec_t prec);
  Interval(const Rational& lo, const Rational& hi, mpfr_prec_t prec);
  Interval(const Interval& o);
  Interval(Interval&& o) noexcept;
  Interval& operator=(Interval o) noexcept;
  ~Interval();

  mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }
  double lo() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
  /// (hi - lo) / min(|lo|, |hi|); infinite if the interval contains zero.
  double relative_width() const;
  /// Nearest double to the midpoint.
  double mid() const;

  Interval& operator+=(const Interval& o);
  Interval& operator-=(const Interval& o);
  Interval& operator*=(const Interval& o);
  /// Divisor must not contain zero.
  Interval& operator/=(const Interval& o);

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
  friend Interval operator/(Interval a, const Interval& b) { return a /= b; }

  /// n^(num/den) for a positive integer n.
  static Interval root_power(unsigned long n, unsigned long num, unsigned long den, mpfr_prec_t prec);

 private:
  mpfr_t lo_, hi_;
};

}  // namespace halfwt::arith
