#include "halfwt/arith/series.hpp"

#include <algorithm>

namespace halfwt::arith {

namespace {

// out[0 .. na+nb-1) += a * b
template <typename S>
void mul_schoolbook(const S* a, std::size_t na, const S* b, std::size_t nb, S* out) {
  for (std::size_t i = 0; i < na; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < nb; ++j) out[i + j] += a[i] * b[j];
  }
}

// out[0 .. 2n-1) += a * b, both operands of length n
template <typename S>
void mul_karatsuba(const S* a, const S* b, std::size_t n, S* out) {
  if (n < kKaratsubaThreshold) {
    mul_schoolbook(a, n, b, n, out);
    return;
  }
  const std::size_t m = n / 2;
  const std::size_t h = n - m;

  std::vector<S> z0(2 * m - 1, S(0));
  std::vector<S> z2(2 * h - 1, S(0));
  mul_karatsuba(a, b, m, z0.data());
  mul_karatsuba(a + m, b + m, h, z2.data());

  std::vector<S> sa(a + m, a + n);
  std::vector<S> sb(b + m, b + n);
  for (std::size_t i = 0; i < m; ++i) {
    sa[i] += a[i];
    sb[i] += b[i];
  }
  std::vector<S> z1(2 * h - 1, S(0));
  mul_karatsuba(sa.data(), sb.data(), h, z1.data());
  for (std::size_t i = 0; i < z0.size(); ++i) z1[i] -= z0[i];
  for (std::size_t i = 0; i < z2.size(); ++i) z1[i] -= z2[i];

  for (std::size_t i = 0; i < z0.size(); ++i) out[i] += z0[i];
  for (std::size_t i = 0; i < z2.size(); ++i) out[2 * m + i] += z2[i];
  for (std::size_t i = 0; i < z1.size(); ++i) out[m + i] += z1[i];
}

}  // namespace

template <typename Scalar>
Series<Scalar> series_mul(const Series<Scalar>& a, const Series<Scalar>& b, std::size_t N) {
  a.require_precision(N);
  b.require_precision(N);
  Series<Scalar> result(N);
  if (N == 0) return result;

  // Trailing zeros of either operand only cost time.
  auto effective = [N](const Series<Scalar>& s) {
    std::size_t len = N;
    while (len > 0 && sgn(s[len - 1]) == 0) --len;
    return len;
  };
  const std::size_t na = effective(a);
  const std::size_t nb = effective(b);
  if (na == 0 || nb == 0) return result;

  const std::size_t n = std::max(na, nb);
  std::vector<Scalar> full(na + nb - 1, Scalar(0));
  if (std::min(na, nb) < kKaratsubaThreshold) {
    mul_schoolbook(a.coefficients().data(), na, b.coefficients().data(), nb, full.data());
  } else {
    std::vector<Scalar> pa(a.coefficients().begin(), a.coefficients().begin() + na);
    std::vector<Scalar> pb(b.coefficients().begin(), b.coefficients().begin() + nb);
    pa.resize(n, Scalar(0));
    pb.resize(n, Scalar(0));
    full.assign(2 * n - 1, Scalar(0));
    mul_karatsuba(pa.data(), pb.data(), n, full.data());
  }
  const std::size_t keep = std::min(N, full.size());
  for (std::size_t i = 0; i < keep; ++i) result[i] = std::move(full[i]);
  return result;
}

template <typename Scalar>
Series<Scalar> series_pow(const Series<Scalar>& a, unsigned e, std::size_t N) {
  a.require_precision(N);
  Series<Scalar> result = Series<Scalar>::one(N);
  if (e == 0) return result;
  Series<Scalar> base = a.truncated(N);
  bool first = true;
  while (true) {
    if (e & 1u) {
      result = first ? base : series_mul(result, base, N);
      first = false;
    }
    e >>= 1u;
    if (e == 0) break;
    base = series_mul(base, base, N);
  }
  return result;
}

ExactSeries to_rational(const IntegerSeries& s) {
  std::vector<Rational> out;
  out.reserve(s.precision());
  for (const auto& c : s.coefficients()) out.emplace_back(c);
  return ExactSeries(std::move(out));
}

template Series<Integer> series_mul(const Series<Integer>&, const Series<Integer>&, std::size_t);
template Series<Rational> series_mul(const Series<Rational>&, const Series<Rational>&,
                                     std::size_t);
template Series<Integer> series_pow(const Series<Integer>&, unsigned, std::size_t);
template Series<Rational> series_pow(const Series<Rational>&, unsigned, std::size_t);

}  // namespace halfwt::arith
