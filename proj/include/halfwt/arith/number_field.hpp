#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "halfwt/arith/polynomial.hpp"
#include "halfwt/errors.hpp"

namespace halfwt::arith {

/// Q[x]/(f) for a monic polynomial f whose irreducibility has been certified.
class NumberField {
 public:
  /// Certifies irreducibility (see is_irreducible) and throws
  /// IrreducibilityError when no certificate is found.
  static std::shared_ptr<const NumberField> create(const Polynomial& min_poly);
  /// The field Q, as Q[x]/(x).
  static std::shared_ptr<const NumberField> rationals();

  const Polynomial& min_poly() const noexcept { return min_poly_; }
  int degree() const noexcept { return min_poly_.degree(); }

 private:
  explicit NumberField(Polynomial f) : min_poly_(std::move(f)) {}
  Polynomial min_poly_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

/// Element of a number field in the power basis 1, x, ..., x^(d-1).
///
/// A default-constructed or integer-constructed value has no field attached
/// and behaves as a rational constant; it adopts the field of the other
/// operand in mixed arithmetic. This lets generic matrix code write Scalar(0).
class AlgebraicNumber {
 public:
  AlgebraicNumber() : coords_{Rational(0)} {}
  AlgebraicNumber(long v) : coords_{Rational(v)} {}  // NOLINT: implicit on purpose
  AlgebraicNumber(const Rational& v) : coords_{v} {}  // NOLINT
  AlgebraicNumber(FieldPtr field, std::vector<Rational> coords);

  /// Generator x of the field.
  static AlgebraicNumber generator(const FieldPtr& field);
  static AlgebraicNumber constant(const FieldPtr& field, const Rational& c);

  const FieldPtr& field() const noexcept { return field_; }
  /// Coordinates padded to the field degree.
  std::vector<Rational> coords() const;
  Rational coord(int i) const;
  bool is_zero() const;
  bool is_rational() const;

  Polynomial as_polynomial() const { return Polynomial(coords_); }
  AlgebraicNumber inverse() const;

  AlgebraicNumber& operator+=(const AlgebraicNumber& o);
  AlgebraicNumber& operator-=(const AlgebraicNumber& o);
  AlgebraicNumber& operator*=(const AlgebraicNumber& o);
  AlgebraicNumber& operator/=(const AlgebraicNumber& o) { return *this *= o.inverse(); }
  AlgebraicNumber operator-() const;

  friend AlgebraicNumber operator+(AlgebraicNumber a, const AlgebraicNumber& b) { return a += b; }
  friend AlgebraicNumber operator-(AlgebraicNumber a, const AlgebraicNumber& b) { return a -= b; }
  friend AlgebraicNumber operator*(AlgebraicNumber a, const AlgebraicNumber& b) { return a *= b; }
  friend AlgebraicNumber operator/(AlgebraicNumber a, const AlgebraicNumber& b) { return a /= b; }
  friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b);
  friend bool operator!=(const AlgebraicNumber& a, const AlgebraicNumber& b) { return !(a == b); }

  std::string to_string(const std::string& var = "x") const;

 private:
  void adopt(const AlgebraicNumber& o);
  FieldPtr field_;
  std::vector<Rational> coords_;
};

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const AlgebraicNumber& a) { return a.is_zero(); }

class IrreducibilityError : public CertificateError {
 public:
  using CertificateError::CertificateError;
};

}  // namespace halfwt::arith
