#include "halfwt/modforms/level1.hpp"

#include <string>

namespace halfwt::modforms {

std::vector<ExactSeries> level1_cusp_basis(int weight, std::size_t N, std::vector<std::size_t>* leads) {
  if (weight < 12 || weight % 2 != 0) throw std::invalid_argument("level1_cusp_basis: weight must be even and >= 12");
  const IntegerSeries delta = delta_series(N), e4 = eisenstein_e4(N), e6 = eisenstein_e6(N);
  std::vector<IntegerSeries> gens;
  const int rest = weight - 12;
  for (int j = 0; 6 * j <= rest; ++j) {
    if ((rest - 6 * j) % 4 != 0) continue;
    const unsigned i = static_cast<unsigned>((rest - 6 * j) / 4);
    IntegerSeries g = arith::series_mul(delta, arith::series_pow(e4, i, N), N);
    gens.push_back(arith::series_mul(g, arith::series_pow(e6, static_cast<unsigned>(j), N), N));
  }
  if (static_cast<int>(gens.size()) != dim_cusp_forms(weight))
    throw DimensionError("level-1 basis size " + std::to_string(gens.size()) + " differs from dim S_" +
                         std::to_string(weight));

  RationalMatrix m(gens.size(), N);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t n = 0; n < N; ++n) m(i, n) = gens[i][n];
  const auto pivots = arith::rref(m);
  if (pivots.size() != gens.size()) throw DimensionError("level-1 basis dependent at precision " + std::to_string(N));
  if (leads) *leads = pivots;
  std::vector<ExactSeries> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    ExactSeries s(N);
    for (std::size_t n = 0; n < N; ++n) s[n] = m(i, n);
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

ExactSeries hecke_T_p(const ExactSeries& f, int p, int weight, std::size_t N_out) {
  const std::size_t pp = static_cast<std::size_t>(p);
  f.require_precision(pp * (N_out - 1) + 1);
  Integer pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), pp, static_cast<unsigned long>(weight - 1));
  ExactSeries out(N_out);
  for (std::size_t n = 0; n < N_out; ++n) {
    out[n] = f[pp * n];
    if (n % pp == 0) out[n] += pk * f[n / pp];
  }
  return out;
}

RationalMatrix hecke_on_basis(const std::vector<ExactSeries>& basis, const std::vector<std::size_t>& leads, int p,
                              int weight) {
  const std::size_t d = basis.size();
  const std::size_t n_out = (basis.front().precision() - 1) / static_cast<std::size_t>(p) + 1;
  RationalMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto image = hecke_T_p(basis[i], p, weight, n_out);
    for (std::size_t j = 0; j < d; ++j) m(j, i) = image[leads[j]];
    for (std::size_t n = 0; n < n_out; ++n) {
      Rational expect = 0;
      for (std::size_t j = 0; j < d; ++j) expect += m(j, i) * basis[j][n];
      if (expect != image[n]) throw DimensionError("level-1 T_p image leaves the cusp space");
    }
  }
  return m;
}

std::size_t hecke_basis_precision(int weight, int p) {
  const std::size_t d = static_cast<std::size_t>(dim_cusp_forms(weight));
  // Leads of the echelon basis are 1..d; check a few extra coefficients.
  return static_cast<std::size_t>(p) * (d + 16) + 1;
}

}  // namespace

RationalMatrix level1_hecke_matrix(int weight, int p) {
  std::vector<std::size_t> leads;
  const auto basis = level1_cusp_basis(weight, hecke_basis_precision(weight, p), &leads);
  if (basis.empty()) throw std::invalid_argument("level1_hecke_matrix: no cusp forms");
  return hecke_on_basis(basis, leads, p, weight);
}

std::vector<Level1Eigenform> level1_eigenforms(int weight, std::size_t N, int p, const FieldPtr& field) {
  if (dim_cusp_forms(weight) == 0) return {};
  const RationalMatrix m = level1_hecke_matrix(weight, p);
  const Polynomial g = arith::charpoly(m);
  FieldPtr K = field;
  if (!K) {
    K = arith::NumberField::create(g);
  } else if (!(K->min_poly() == g)) {
    throw CertificateError("charpoly of T_" + std::to_string(p) + " on S_" + std::to_string(weight) +
                           " differs from the field polynomial " + K->min_poly().to_string());
  }

  const std::size_t d = m.rows();
  const auto x = AlgebraicNumber::generator(K);
  arith::AlgebraicMatrix a(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a(i, j) = AlgebraicNumber(m(i, j)) - (i == j ? x : AlgebraicNumber(0));
  const auto v = arith::kernel_vector(a);

  const std::size_t prec = std::max<std::size_t>(N, d + 2);
  const auto basis = level1_cusp_basis(weight, prec);
  auto coeffs = std::make_shared<std::vector<AlgebraicNumber>>(prec, AlgebraicNumber::constant(K, 0));
  for (std::size_t n = 0; n < prec; ++n)
    for (std::size_t i = 0; i < d; ++i)
      if (sgn(basis[i][n]) != 0) (*coeffs)[n] += AlgebraicNumber(basis[i][n]) * v[i];
  const AlgebraicNumber c1 = (*coeffs)[1];
  if (c1.is_zero()) throw arith::EigenspaceError("level-1 eigenform has c(1) = 0");
  const AlgebraicNumber inv = c1.inverse();
  for (auto& c : *coeffs) c *= inv;
  coeffs->resize(N);

  auto roots = arith::isolate_real_roots(K->min_poly(), 12);
  if (static_cast<int>(roots.size()) != K->degree())
    throw CertificateError("level-1 Hecke polynomial has non-real roots");
  std::vector<Level1Eigenform> out;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    Level1Eigenform e;
    e.weight = weight;
    e.index = static_cast<int>(j) + 1;
    e.field = K;
    e.embedding = roots[j];
    e.embedding.field = K;
    e.coeffs = coeffs;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace halfwt::modforms
