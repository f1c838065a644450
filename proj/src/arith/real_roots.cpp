#include "halfwt/arith/real_roots.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace halfwt::arith {

namespace {

std::vector<Polynomial> sturm_chain(const Polynomial& f) {
  std::vector<Polynomial> chain{f, f.derivative()};
  while (!chain.back().is_zero()) {
    Polynomial r = chain[chain.size() - 2] % chain.back();
    if (r.is_zero()) break;
    chain.push_back(Rational(-1) * r);
  }
  return chain;
}

int sign_variations(const std::vector<Polynomial>& chain, const Rational& x) {
  int count = 0, last = 0;
  for (const auto& p : chain) {
    const int s = p.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

long approx_log2(const Rational& q) {
  if (sgn(q) == 0) return -1000000;
  const long nb = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2));
  const long db = static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
  return nb - db;
}

Rational pow10(int digits) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::max(0, digits)));
  return Rational(p);
}

// Picks a split point inside (lo, hi) where f does not vanish.
Rational safe_midpoint(const Polynomial& f, const Rational& lo, const Rational& hi) {
  Rational mid = (lo + hi) / 2;
  long k = 3;
  while (f.sign_at(mid) == 0) {
    mid = lo + (hi - lo) * Rational(k - 1) / (2 * k - 1);
    ++k;
  }
  return mid;
}

void bisect_once(const Polynomial& f, Rational& lo, Rational& hi) {
  const int slo = f.sign_at(lo);
  const Rational mid = safe_midpoint(f, lo, hi);
  if (f.sign_at(mid) == slo) lo = mid;
  else hi = mid;
}

bool relative_done(const Rational& lo, const Rational& hi, const Rational& scale) {
  if (sgn(lo) != sgn(hi) || sgn(lo) == 0) return false;
  const Rational alo = abs(lo), ahi = abs(hi);
  const Rational& lower = alo < ahi ? alo : ahi;
  return (hi - lo) * scale < lower;
}

// Bisection until the interval is narrow relative to its midpoint, then
// Newton steps whose output interval is certified by a sign change; a failed
// certificate falls back to one bisection.
void refine_interval(const Polynomial& f, Rational& lo, Rational& hi,
                     const std::function<bool(const Rational&, const Rational&)>& done,
                     bool root_is_zero) {
  if (root_is_zero) {
    while (!done(lo, hi)) bisect_once(f, lo, hi);
    return;
  }
  const Rational coarse = 1000;
  while (!done(lo, hi) && !relative_done(lo, hi, coarse)) bisect_once(f, lo, hi);

  const Polynomial df = f.derivative();
  const Polynomial d2f = df.derivative();
  while (!done(lo, hi)) {
    const Rational width = hi - lo;
    const Rational mid = (lo + hi) / 2;
    const Rational slope = df(mid);
    if (sgn(slope) == 0) {
      bisect_once(f, lo, hi);
      continue;
    }
    const long bits = 2 * std::max<long>(0, -approx_log2(width)) + 32;
    const Rational c = round_dyadic(mid - f(mid) / slope, bits);
    const Rational step = abs(c - mid);
    const Rational curvature = abs(d2f(mid) / slope);
    Rational e = step * step * (curvature + 1) * 4;
    Rational floor_e = 1;
    mpq_div_2exp(floor_e.get_mpq_t(), floor_e.get_mpq_t(), static_cast<mp_bitcnt_t>(bits));
    if (e < floor_e) e = floor_e;
    const Rational a = round_dyadic(c - e, bits + 2);
    const Rational b = round_dyadic(c + e, bits + 2) + floor_e;
    if (a > lo && b < hi && (b - a) * 2 < width) {
      const int sa = f.sign_at(a), sb = f.sign_at(b);
      if (sa != 0 && sb != 0 && sa != sb) {
        lo = a;
        hi = b;
        continue;
      }
    }
    bisect_once(f, lo, hi);
  }
}

}  // namespace

Rational round_dyadic(const Rational& x, long bits) {
  Rational scaled = x;
  if (bits >= 0) mpq_mul_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), static_cast<mp_bitcnt_t>(bits));
  else mpq_div_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), static_cast<mp_bitcnt_t>(-bits));
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rational out(fl);
  if (bits >= 0) mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(bits));
  else mpq_mul_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(-bits));
  return out;
}

int sturm_count(const Polynomial& f, const Rational& a, const Rational& b) {
  if (f.sign_at(a) == 0 || f.sign_at(b) == 0)
    throw std::invalid_argument("sturm_count: polynomial vanishes at an endpoint");
  const auto chain = sturm_chain(f);
  return sign_variations(chain, a) - sign_variations(chain, b);
}

std::vector<RealEmbedding> isolate_real_roots(const Polynomial& input, int digits) {
  if (input.degree() < 1) return {};
  const Polynomial f = squarefree_part(input);
  const auto chain = sturm_chain(f);

  // Cauchy bound: every root lies strictly inside (-M, M).
  Rational M = 0;
  for (int i = 0; i < f.degree(); ++i) M = std::max(M, Rational(abs(f.coeff(i) / f.leading())));
  M += 1;

  std::vector<std::pair<Rational, Rational>> isolated;
  std::vector<std::pair<Rational, Rational>> todo{{-M, M}};
  while (!todo.empty()) {
    auto [a, b] = todo.back();
    todo.pop_back();
    const int count = sign_variations(chain, a) - sign_variations(chain, b);
    if (count == 0) continue;
    if (count == 1) {
      isolated.emplace_back(a, b);
      continue;
    }
    const Rational mid = safe_midpoint(f, a, b);
    todo.emplace_back(a, mid);
    todo.emplace_back(mid, b);
  }
  std::sort(isolated.begin(), isolated.end());

  std::vector<RealEmbedding> out;
  for (auto& [a, b] : isolated) {
    RealEmbedding e;
    e.poly = f;
    e.lo = a;
    e.hi = b;
    e.refine(digits);
    out.push_back(std::move(e));
  }
  return out;
}

void RealEmbedding::refine(int target_digits) {
  const bool zero_root = poly.sign_at(0) == 0 && lo < 0 && hi > 0;
  const Rational scale = pow10(target_digits);
  if (zero_root) {
    // The root is exactly 0; relative width is meaningless, use absolute.
    refine_interval(
        poly, lo, hi, [&](const Rational& a, const Rational& b) { return (b - a) * scale < 1; },
        true);
  } else {
    refine_interval(
        poly, lo, hi,
        [&](const Rational& a, const Rational& b) { return relative_done(a, b, scale); }, false);
  }
  digits = std::max(digits, target_digits);
}

void RealEmbedding::refine_absolute(long bits) {
  Rational scale = 1;
  mpq_mul_2exp(scale.get_mpq_t(), scale.get_mpq_t(), static_cast<mp_bitcnt_t>(bits));
  const bool zero_root = poly.sign_at(0) == 0 && lo < 0 && hi > 0;
  refine_interval(
      poly, lo, hi, [&](const Rational& a, const Rational& b) { return (b - a) * scale < 1; },
      zero_root);
}

double RealEmbedding::approx() const { return Rational((lo + hi) / 2).get_d(); }

Interval enclose(const AlgebraicNumber& a, const RealEmbedding& e, mpfr_prec_t prec) {
  const Interval x(e.lo, e.hi, prec);
  const auto c = a.coords();
  Interval acc(c.back(), prec);
  for (std::size_t t = c.size() - 1; t-- > 0;) acc = acc * x + Interval(c[t], prec);
  return acc;
}

double embed(const AlgebraicNumber& a, RealEmbedding& e, int digits) {
  if (a.is_zero()) return 0.0;
  const double target = std::pow(10.0, -digits);
  mpfr_prec_t prec = 128;
  for (int round = 0; round < 64; ++round) {
    const Interval v = enclose(a, e, prec);
    if (v.relative_width() < target) return v.mid();
    e.refine(e.digits + 2 * digits);
    prec += 64;
  }
  throw std::runtime_error("embed: interval did not tighten");
}

}  // namespace halfwt::arith
