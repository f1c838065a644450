#include "halfwt/arith/number_field.hpp"

#include "halfwt/arith/irreducibility.hpp"

namespace halfwt::arith {

std::shared_ptr<const NumberField> NumberField::create(const Polynomial& min_poly) {
  if (min_poly.degree() < 1) throw std::invalid_argument("NumberField: constant polynomial");
  const Polynomial f = min_poly.monic();
  const auto cert = certify_irreducibility(f);
  if (cert.status == Irreducibility::undetermined)
    throw IrreducibilityError("irreducibility undetermined for " + f.to_string() +
                              "; refusing to build the number field");
  if (cert.status == Irreducibility::reducible)
    throw IrreducibilityError("polynomial " + f.to_string() + " is reducible (" + cert.evidence +
                              ")");
  return std::shared_ptr<const NumberField>(new NumberField(f));
}

std::shared_ptr<const NumberField> NumberField::rationals() {
  static const std::shared_ptr<const NumberField> q(new NumberField(Polynomial::x()));
  return q;
}

AlgebraicNumber::AlgebraicNumber(FieldPtr field, std::vector<Rational> coords)
    : field_(std::move(field)) {
  Polynomial p(std::move(coords));
  if (field_ && p.degree() >= field_->degree()) p = p % field_->min_poly();
  coords_ = p.coefficients();
  if (coords_.empty()) coords_.push_back(0);
}

AlgebraicNumber AlgebraicNumber::generator(const FieldPtr& field) {
  return AlgebraicNumber(field, {Rational(0), Rational(1)});
}

AlgebraicNumber AlgebraicNumber::constant(const FieldPtr& field, const Rational& c) {
  return AlgebraicNumber(field, {c});
}

std::vector<Rational> AlgebraicNumber::coords() const {
  std::vector<Rational> out = coords_;
  const std::size_t d = field_ ? static_cast<std::size_t>(field_->degree()) : 1;
  if (out.size() < d) out.resize(d, Rational(0));
  return out;
}

Rational AlgebraicNumber::coord(int i) const {
  return i >= 0 && static_cast<std::size_t>(i) < coords_.size() ? coords_[static_cast<std::size_t>(i)]
                                                                 : Rational(0);
}

bool AlgebraicNumber::is_zero() const {
  for (const auto& c : coords_)
    if (sgn(c) != 0) return false;
  return true;
}

bool AlgebraicNumber::is_rational() const {
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (sgn(coords_[i]) != 0) return false;
  return true;
}

void AlgebraicNumber::adopt(const AlgebraicNumber& o) {
  // Elements of Q (no field, or a degree-1 field) mix with any field.
  if (!o.field_ || o.field_ == field_ || o.field_->degree() == 1) return;
  if (!field_ || field_->degree() == 1) {
    field_ = o.field_;
  } else if (!(o.field_->min_poly() == field_->min_poly())) {
    throw std::invalid_argument("AlgebraicNumber: operands from different fields");
  }
}

AlgebraicNumber& AlgebraicNumber::operator+=(const AlgebraicNumber& o) {
  adopt(o);
  if (o.coords_.size() > coords_.size()) coords_.resize(o.coords_.size(), Rational(0));
  for (std::size_t i = 0; i < o.coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

AlgebraicNumber& AlgebraicNumber::operator-=(const AlgebraicNumber& o) {
  adopt(o);
  if (o.coords_.size() > coords_.size()) coords_.resize(o.coords_.size(), Rational(0));
  for (std::size_t i = 0; i < o.coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

AlgebraicNumber& AlgebraicNumber::operator*=(const AlgebraicNumber& o) {
  adopt(o);
  if (o.is_rational()) {
    for (auto& c : coords_) c *= o.coords_[0];
    return *this;
  }
  if (is_rational()) {
    const Rational s = coords_[0];
    coords_ = o.coords_;
    for (auto& c : coords_) c *= s;
    return *this;
  }
  Polynomial p = as_polynomial() * o.as_polynomial();
  if (field_) p = p % field_->min_poly();
  coords_ = p.coefficients();
  if (coords_.empty()) coords_.push_back(0);
  return *this;
}

AlgebraicNumber AlgebraicNumber::operator-() const {
  AlgebraicNumber out = *this;
  for (auto& c : out.coords_) c = -c;
  return out;
}

AlgebraicNumber AlgebraicNumber::inverse() const {
  if (is_zero()) throw std::domain_error("AlgebraicNumber: division by zero");
  if (is_rational()) {
    AlgebraicNumber out = *this;
    out.coords_ = {Rational(1) / coords_[0]};
    return out;
  }
  // s*a + t*f = 1 since f is irreducible and a != 0 mod f.
  const auto r = xgcd(as_polynomial(), field_->min_poly());
  if (r.g.degree() != 0) throw std::domain_error("AlgebraicNumber: element is not invertible");
  return AlgebraicNumber(field_, r.s.coefficients());
}

bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  const std::size_t n = std::max(a.coords_.size(), b.coords_.size());
  for (std::size_t i = 0; i < n; ++i)
    if (a.coord(static_cast<int>(i)) != b.coord(static_cast<int>(i))) return false;
  return true;
}

std::string AlgebraicNumber::to_string(const std::string& var) const {
  return as_polynomial().to_string(var);
}

}  // namespace halfwt::arith
