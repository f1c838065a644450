#pragma once

#include <string>
#include <utility>
#include <vector>

#include "halfwt/arith/series.hpp"

namespace halfwt::arith {

/// Dense univariate polynomial over Q, coefficients stored low degree first.
/// The zero polynomial has no coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  Polynomial(std::initializer_list<long> coeffs);

  static Polynomial x() { return Polynomial({0, 1}); }
  static Polynomial constant(const Rational& c) { return Polynomial(std::vector<Rational>{c}); }
  static Polynomial monomial(int degree, const Rational& c = 1);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Coefficient of x^i, zero beyond the degree.
  Rational coeff(int i) const;
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
  Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

  Rational operator()(const Rational& x) const;
  int sign_at(const Rational& x) const { return sgn((*this)(x)); }

  Polynomial derivative() const;
  Polynomial monic() const;
  /// Integer polynomial with coprime coefficients and positive leading coefficient.
  std::vector<Integer> primitive_integer_coefficients() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  std::string to_string(const std::string& var = "x") const;

 private:
  void normalize();
  std::vector<Rational> coeffs_;
};

/// Quotient and remainder of Euclidean division; divisor must be nonzero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
Polynomial operator%(const Polynomial& a, const Polynomial& b);
/// Monic greatest common divisor (zero if both inputs are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);
/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
struct XgcdResult {
  Polynomial g, s, t;
};
XgcdResult xgcd(const Polynomial& a, const Polynomial& b);

/// f / gcd(f, f'), monic.
Polynomial squarefree_part(const Polynomial& f);

}  // namespace halfwt::arith
