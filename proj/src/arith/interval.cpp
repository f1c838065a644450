#include "halfwt/arith/interval.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace halfwt::arith {

Interval::Interval(mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rational& q, mpfr_prec_t prec) : Interval(q, q, prec) {}

Interval::Interval(const Rational& lo, const Rational& hi, mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_q(lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, hi.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Interval& o) {
  mpfr_init2(lo_, mpfr_get_prec(o.lo_));
  mpfr_init2(hi_, mpfr_get_prec(o.hi_));
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept {
  // Steal the limbs and leave o as a valid zero-precision-minimum value.
  *lo_ = *o.lo_;
  *hi_ = *o.hi_;
  mpfr_init2(o.lo_, MPFR_PREC_MIN);
  mpfr_init2(o.hi_, MPFR_PREC_MIN);
}

Interval& Interval::operator=(Interval o) noexcept {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

double Interval::relative_width() const {
  if (contains_zero()) return std::numeric_limits<double>::infinity();
  mpfr_t w, m;
  mpfr_init2(w, 64);
  mpfr_init2(m, 64);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  if (mpfr_sgn(lo_) > 0) mpfr_set(m, lo_, MPFR_RNDD);
  else mpfr_neg(m, hi_, MPFR_RNDD);
  mpfr_div(w, w, m, MPFR_RNDU);
  const double out = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  mpfr_clear(m);
  return out;
}

double Interval::mid() const {
  mpfr_t s;
  mpfr_init2(s, precision() + 1);
  mpfr_add(s, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(s, s, 1, MPFR_RNDN);
  const double out = mpfr_get_d(s, MPFR_RNDN);
  mpfr_clear(s);
  return out;
}

Interval& Interval::operator+=(const Interval& o) {
  mpfr_add(lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(hi_, hi_, o.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator-=(const Interval& o) {
  mpfr_t t;
  mpfr_init2(t, precision());
  mpfr_sub(t, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(hi_, hi_, o.lo_, MPFR_RNDU);
  mpfr_swap(lo_, t);
  mpfr_clear(t);
  return *this;
}

Interval& Interval::operator*=(const Interval& o) {
  const mpfr_prec_t prec = precision();
  mpfr_t c[4], d[4];
  const mpfr_srcptr a[2] = {lo_, hi_};
  const mpfr_srcptr b[2] = {o.lo_, o.hi_};
  for (int i = 0; i < 4; ++i) {
    mpfr_init2(c[i], prec);
    mpfr_init2(d[i], prec);
    mpfr_mul(c[i], a[i / 2], b[i % 2], MPFR_RNDD);
    mpfr_mul(d[i], a[i / 2], b[i % 2], MPFR_RNDU);
  }
  mpfr_min(lo_, c[0], c[1], MPFR_RNDD);
  mpfr_min(lo_, lo_, c[2], MPFR_RNDD);
  mpfr_min(lo_, lo_, c[3], MPFR_RNDD);
  mpfr_max(hi_, d[0], d[1], MPFR_RNDU);
  mpfr_max(hi_, hi_, d[2], MPFR_RNDU);
  mpfr_max(hi_, hi_, d[3], MPFR_RNDU);
  for (int i = 0; i < 4; ++i) {
    mpfr_clear(c[i]);
    mpfr_clear(d[i]);
  }
  return *this;
}

Interval& Interval::operator/=(const Interval& o) {
  if (o.contains_zero()) throw std::domain_error("Interval: division by an interval containing zero");
  Interval inv(o.precision());
  mpfr_ui_div(inv.lo_, 1, o.hi_, MPFR_RNDD);
  mpfr_ui_div(inv.hi_, 1, o.lo_, MPFR_RNDU);
  return *this *= inv;
}

Interval Interval::root_power(unsigned long n, unsigned long num, unsigned long den, mpfr_prec_t prec) {
  if (n == 0 || den == 0) throw std::invalid_argument("Interval::root_power: bad arguments");
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), n, num);
  Interval out(prec);
  mpfr_set_z(out.lo_, p.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(out.hi_, p.get_mpz_t(), MPFR_RNDU);
  mpfr_rootn_ui(out.lo_, out.lo_, den, MPFR_RNDD);
  mpfr_rootn_ui(out.hi_, out.hi_, den, MPFR_RNDU);
  return out;
}

}  // namespace halfwt::arith
