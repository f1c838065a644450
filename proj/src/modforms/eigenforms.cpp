#include "halfwt/modforms/eigenforms.hpp"

#include <string>

namespace halfwt::modforms {

std::shared_ptr<const ExactExpansion> ExactExpansion::assemble(int ell,
                                                               const std::vector<AlgebraicNumber>& coords,
                                                               const FieldPtr& field, std::size_t N,
                                                               ThetaPowers* cache) {
  const auto exps = monomial_exponents(ell);
  if (coords.size() != exps.size()) throw std::invalid_argument("assemble: wrong number of monomial coordinates");
  const std::size_t d = static_cast<std::size_t>(field->degree());

  auto out = std::make_shared<ExactExpansion>();
  out->field_ = field;
  out->precision_ = N;
  Integer den = 1;
  std::vector<std::vector<Rational>> c;
  for (const auto& w : coords) {
    auto v = AlgebraicNumber(field, w.coords()).coords();
    v.resize(d, Rational(0));
    for (const auto& q : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    c.push_back(std::move(v));
  }
  out->denominator_ = den;
  std::vector<std::vector<Integer>> weights(c.size(), std::vector<Integer>(d));
  for (std::size_t m = 0; m < c.size(); ++m)
    for (std::size_t t = 0; t < d; ++t) weights[m][t] = c[m][t].get_num() * (den / c[m][t].get_den());

  out->series_ = combine_monomials(ell, weights, N, cache);
  return out;
}

std::vector<Integer> ExactExpansion::numerators(std::size_t n) const {
  std::vector<Integer> out(series_.size());
  for (std::size_t t = 0; t < series_.size(); ++t) out[t] = series_[t].coefficient(n);
  return out;
}

AlgebraicNumber ExactExpansion::coefficient(std::size_t n) const {
  const auto num = numerators(n);
  std::vector<Rational> q(num.size());
  for (std::size_t t = 0; t < num.size(); ++t) {
    q[t] = Rational(num[t], denominator_);
    q[t].canonicalize();
  }
  return AlgebraicNumber(field_, std::move(q));
}

std::size_t ExactExpansion::bytes() const {
  std::size_t b = 0;
  for (const auto& s : series_) b += s.bytes();
  return b;
}

AlgebraicNumber hecke_eigenvalue(const EigenSystem& sys, int p) {
  const auto basis = sys.basis.precision() >= hecke_precision(sys.basis, p)
                         ? sys.basis
                         : expand_basis(sys.basis, hecke_precision(sys.basis, p));
  const RationalMatrix m = hecke_matrix(basis, p);
  const std::size_t d = sys.basis_coords.size();
  std::vector<AlgebraicNumber> image(d, AlgebraicNumber(0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) image[i] += AlgebraicNumber(m(i, j)) * sys.basis_coords[j];
  std::size_t k = 0;
  while (k < d && sys.basis_coords[k].is_zero()) ++k;
  const AlgebraicNumber lambda = image[k] / sys.basis_coords[k];
  for (std::size_t i = 0; i < d; ++i)
    if (image[i] != lambda * sys.basis_coords[i])
      throw arith::EigenspaceError("T(" + std::to_string(p) + "^2) does not preserve the T(9) eigenvector");
  return lambda;
}

EigenSystem eigen_system(int ell, const std::vector<int>& primes) {
  EigenSystem sys;
  sys.ell = ell;
  const auto small = plus_cusp_basis(ell, 100);
  if (small.dimension() == 0)
    throw std::invalid_argument("weight " + std::to_string(2 * ell + 1) + "/2 has no cusp forms");
  sys.basis = expand_basis(small, hecke_precision(small, 3));
  sys.t9 = hecke_matrix(sys.basis, 3);
  sys.charpoly = arith::charpoly(sys.t9);
  sys.field = arith::NumberField::create(sys.charpoly);

  const std::size_t d = sys.basis.dimension();
  const auto x = AlgebraicNumber::generator(sys.field);
  arith::AlgebraicMatrix a(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a(i, j) = AlgebraicNumber(sys.t9(i, j)) - (i == j ? x : AlgebraicNumber(0));
  sys.basis_coords = arith::kernel_vector(a);

  const std::size_t m = sys.basis.monomials.size();
  sys.monomial_coords.assign(m, AlgebraicNumber::constant(sys.field, 0));
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t i = 0; i < d; ++i)
      sys.monomial_coords[c] += AlgebraicNumber(sys.basis.coords(i, c)) * sys.basis_coords[i];

  sys.eigenvalues[3] = x;
  for (int p : primes) {
    const auto lambda = hecke_eigenvalue(sys, p);
    if (p == 3 && lambda != x) throw arith::EigenspaceError("T(9) eigenvalue is not the field generator");
    sys.eigenvalues[p] = lambda;
  }
  return sys;
}

std::string form_label(int ell, int index, int count) {
  std::string label = std::to_string(2 * ell + 1) + "/2";
  if (count > 1) label += "(" + std::to_string(index) + ")";
  return label;
}

std::vector<HalfIntegralForm> eigenforms_from_system(const EigenSystem& sys, std::size_t N, ThetaPowers* cache) {
  auto roots = arith::isolate_real_roots(sys.charpoly, 12);
  if (static_cast<int>(roots.size()) != sys.charpoly.degree())
    throw CertificateError("charpoly of T(9) for weight " + std::to_string(2 * sys.ell + 1) +
                           "/2 has non-real roots");
  const auto expansion = ExactExpansion::assemble(sys.ell, sys.monomial_coords, sys.field, N, cache);
  std::vector<HalfIntegralForm> out;
  const int count = static_cast<int>(roots.size());
  for (int j = 0; j < count; ++j) {
    HalfIntegralForm f;
    f.ell = sys.ell;
    f.two_k = 2 * sys.ell + 1;
    f.index = j + 1;
    f.label = form_label(sys.ell, j + 1, count);
    f.field = sys.field;
    f.monomial_coords = sys.monomial_coords;
    f.embedding = roots[static_cast<std::size_t>(j)];
    f.embedding.field = sys.field;
    f.expansion = expansion;
    f.eigenvalues = sys.eigenvalues;
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<HalfIntegralForm> extract_eigenforms(int ell, std::size_t N, const std::vector<int>& primes,
                                                 ThetaPowers* cache) {
  return eigenforms_from_system(eigen_system(ell, primes), N, cache);
}

HalfIntegralForm plus_space_element(const PlusCuspBasis& basis, const std::vector<Rational>& coords,
                                    std::size_t N) {
  if (coords.size() != basis.dimension()) throw std::invalid_argument("plus_space_element: wrong coordinate count");
  const auto q = arith::NumberField::rationals();
  std::vector<AlgebraicNumber> w(basis.monomials.size(), AlgebraicNumber::constant(q, 0));
  for (std::size_t c = 0; c < w.size(); ++c)
    for (std::size_t i = 0; i < coords.size(); ++i) w[c] += AlgebraicNumber(Rational(coords[i] * basis.coords(i, c)));
  HalfIntegralForm f;
  f.ell = basis.ell;
  f.two_k = 2 * basis.ell + 1;
  f.label = std::to_string(f.two_k) + "/2(element)";
  f.field = q;
  f.monomial_coords = w;
  f.embedding.poly = Polynomial::x();
  f.embedding.field = q;
  f.embedding.lo = -1;
  f.embedding.hi = 1;
  f.expansion = ExactExpansion::assemble(basis.ell, w, q, N);
  return f;
}

}  // namespace halfwt::modforms
