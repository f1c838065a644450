#pragma once

// Dense truncated power series with exact coefficients.
//
// Series<Scalar> stores the coefficients of q^0 .. q^(N-1). Scalar is one of
// the GMP exact types (Integer or Rational); nothing in this header touches
// floating point.

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace halfwt::arith {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised when an operation needs more coefficients than a series carries.
class PrecisionError : public std::runtime_error {
 public:
  PrecisionError(std::size_t required, std::size_t available)
      : std::runtime_error("precision shortfall: need " + std::to_string(required) +
                           " coefficients, have " + std::to_string(available)),
        required_(required) {}
  std::size_t required() const noexcept { return required_; }

 private:
  std::size_t required_;
};

template <typename Scalar>
class Series {
 public:
  using scalar_type = Scalar;

  Series() = default;
  explicit Series(std::size_t precision) : coeffs_(precision, Scalar(0)) {}
  explicit Series(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {}

  static Series one(std::size_t precision) {
    Series s(precision);
    if (precision > 0) s.coeffs_[0] = 1;
    return s;
  }

  std::size_t precision() const noexcept { return coeffs_.size(); }
  const Scalar& operator[](std::size_t n) const { return coeffs_[n]; }
  Scalar& operator[](std::size_t n) { return coeffs_[n]; }
  std::span<const Scalar> coefficients() const noexcept { return coeffs_; }
  std::span<Scalar> coefficients() noexcept { return coeffs_; }

  /// First N coefficients; throws PrecisionError if fewer are available.
  Series truncated(std::size_t N) const {
    require_precision(N);
    return Series(std::vector<Scalar>(coeffs_.begin(), coeffs_.begin() + N));
  }

  void require_precision(std::size_t N) const {
    if (N > coeffs_.size()) throw PrecisionError(N, coeffs_.size());
  }

  /// Index of the first nonzero coefficient, or precision() for the zero series.
  std::size_t valuation() const {
    for (std::size_t n = 0; n < coeffs_.size(); ++n)
      if (sgn(coeffs_[n]) != 0) return n;
    return coeffs_.size();
  }

  bool is_zero() const { return valuation() == coeffs_.size(); }

  friend bool operator==(const Series& a, const Series& b) { return a.coeffs_ == b.coeffs_; }

  Series& operator+=(const Series& other);
  Series& operator-=(const Series& other);
  Series& operator*=(const Scalar& c) {
    for (auto& x : coeffs_) x *= c;
    return *this;
  }

 private:
  std::vector<Scalar> coeffs_;
};

using ExactSeries = Series<Rational>;
using IntegerSeries = Series<Integer>;

/// Below this operand length series_mul uses the schoolbook product.
inline constexpr std::size_t kKaratsubaThreshold = 64;

/// Product truncated to N coefficients. Both inputs must have precision >= N.
template <typename Scalar>
Series<Scalar> series_mul(const Series<Scalar>& a, const Series<Scalar>& b, std::size_t N);

/// a^e truncated to N, by binary exponentiation truncating at every step.
template <typename Scalar>
Series<Scalar> series_pow(const Series<Scalar>& a, unsigned e, std::size_t N);

template <typename Scalar>
Series<Scalar> operator+(Series<Scalar> a, const Series<Scalar>& b) {
  a += b;
  return a;
}
template <typename Scalar>
Series<Scalar> operator-(Series<Scalar> a, const Series<Scalar>& b) {
  a -= b;
  return a;
}
template <typename Scalar>
Series<Scalar> operator*(const Scalar& c, Series<Scalar> a) {
  a *= c;
  return a;
}

ExactSeries to_rational(const IntegerSeries& s);

// Element-wise add/sub over the common precision (the shorter operand wins).
template <typename Scalar>
Series<Scalar>& Series<Scalar>::operator+=(const Series& other) {
  if (other.precision() < precision()) coeffs_.resize(other.precision());
  for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] += other.coeffs_[n];
  return *this;
}

template <typename Scalar>
Series<Scalar>& Series<Scalar>::operator-=(const Series& other) {
  if (other.precision() < precision()) coeffs_.resize(other.precision());
  for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] -= other.coeffs_[n];
  return *this;
}

extern template Series<Integer> series_mul(const Series<Integer>&, const Series<Integer>&,
                                           std::size_t);
extern template Series<Rational> series_mul(const Series<Rational>&, const Series<Rational>&,
                                            std::size_t);
extern template Series<Integer> series_pow(const Series<Integer>&, unsigned, std::size_t);
extern template Series<Rational> series_pow(const Series<Rational>&, unsigned, std::size_t);

}  // namespace halfwt::arith
