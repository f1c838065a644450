#include "halfwt/modforms/plus_space.hpp"

#include <optional>
#include <string>

namespace halfwt::modforms {

std::vector<MonomialExponent> monomial_exponents(int ell) {
  if (ell < 0) throw std::invalid_argument("monomial_exponents: negative ell");
  std::vector<MonomialExponent> out;
  for (int b = 0; 4 * b <= 2 * ell + 1; ++b) out.push_back({2 * ell + 1 - 4 * b, b});
  return out;
}

namespace {

PackedSeries packed_one(std::size_t N) { return PackedSeries::pack(IntegerSeries::one(N)); }

PackedSeries theta_power(const PackedSeries& theta, int a, std::size_t N) {
  PackedSeries out = packed_one(N);
  PackedSeries base = theta;
  for (int e = a; e > 0; e >>= 1) {
    if (e & 1) out = packed_mul(out, base, N);
    if (e > 1) base = packed_square(base, N);
  }
  return out;
}

ExactSeries combine(const std::vector<IntegerSeries>& monos, const RationalMatrix& coords,
                    std::size_t row, std::size_t N) {
  ExactSeries out(N);
  for (std::size_t m = 0; m < monos.size(); ++m) {
    const Rational& c = coords(row, m);
    if (sgn(c) == 0) continue;
    for (std::size_t n = 0; n < N; ++n)
      if (sgn(monos[m][n]) != 0) out[n] += c * monos[m][n];
  }
  return out;
}

std::vector<IntegerSeries> integer_monomials(int ell, std::size_t N) {
  std::vector<IntegerSeries> monos;
  for_each_monomial(ell, N, [&](std::size_t, const PackedSeries& s) { monos.push_back(s.unpack(N)); });
  return monos;
}

}  // namespace

void for_each_monomial(int ell, std::size_t N,
                       const std::function<void(std::size_t, const PackedSeries&)>& visit) {
  const auto exps = monomial_exponents(ell);
  const std::size_t B = exps.size() - 1;
  const int a_min = exps.back().a;
  const PackedSeries theta = PackedSeries::pack(theta_series(N));

  // thetas[j] = theta^(a_min + 4j); the largest powers are consumed first.
  std::vector<PackedSeries> thetas;
  thetas.reserve(B + 1);
  thetas.push_back(theta_power(theta, a_min, N));
  if (B > 0) {
    const PackedSeries theta4 = packed_square(packed_square(theta, N), N);
    for (std::size_t j = 1; j <= B; ++j) thetas.push_back(packed_mul(thetas.back(), theta4, N));
  }

  const PackedSeries f = PackedSeries::pack(f_series(N));
  PackedSeries fpow = packed_one(N);
  for (std::size_t b = 0; b <= B; ++b) {
    const std::size_t j = B - b;
    if (exps[b].a == 0) {
      visit(b, fpow);
    } else if (b == 0) {
      visit(b, thetas[j]);
    } else {
      visit(b, packed_mul(thetas[j], fpow, N));
    }
    thetas[j] = PackedSeries();
    if (b < B) fpow = b == 0 ? f : packed_mul(fpow, f, N);
  }
}

ThetaPowers::ThetaPowers(int residue, std::size_t N) : residue_(residue), N_(N) {
  if (residue != 1 && residue != 3) throw std::invalid_argument("ThetaPowers: residue must be 1 or 3");
}

const PackedSeries& ThetaPowers::get(std::size_t j) {
  if (powers_.empty()) {
    const PackedSeries theta = PackedSeries::pack(theta_series(N_));
    powers_.push_back(theta_power(theta, residue_, N_));
    theta4_ = packed_square(packed_square(theta, N_), N_);
  }
  while (powers_.size() <= j) powers_.push_back(packed_mul(powers_.back(), theta4_, N_));
  return powers_[j];
}

std::size_t ThetaPowers::bytes() const {
  std::size_t b = theta4_.bytes();
  for (const auto& p : powers_) b += p.bytes();
  return b;
}

std::vector<PackedSeries> combine_monomials(int ell, const std::vector<std::vector<Integer>>& weights,
                                            std::size_t N, ThetaPowers* cache) {
  const auto exps = monomial_exponents(ell);
  if (weights.size() != exps.size()) throw std::invalid_argument("combine_monomials: one weight row per monomial");
  const std::size_t cols = weights.front().size();
  std::vector<PackedSeries> out(cols, PackedSeries::zero(N));

  if (cols > 2 && !cache) {
    for_each_monomial(ell, N, [&](std::size_t m, const PackedSeries& mono) {
      for (std::size_t t = 0; t < cols; ++t) out[t].add_scaled(mono, weights[m][t]);
    });
    return out;
  }

  // out_t = sum_b w_bt theta^(a_min + 4(B - b)) F^b, Horner from b = B down.
  const std::size_t B = exps.size() - 1;
  std::optional<ThetaPowers> local;
  if (!cache || cache->precision() != N || cache->residue() != exps.back().a) {
    local.emplace(exps.back().a, N);
    cache = &*local;
  }
  const PackedSeries f = PackedSeries::pack(f_series(N));
  for (std::size_t b = B + 1; b-- > 0;) {
    if (b < B)
      for (auto& acc : out) acc = packed_mul(acc, f, N);
    const PackedSeries& tpow = cache->get(B - b);
    for (std::size_t t = 0; t < cols; ++t) out[t].add_scaled(tpow, weights[b][t]);
  }
  return out;
}

std::vector<ExactSeries> monomial_basis(int ell, std::size_t N) {
  std::vector<ExactSeries> out;
  for (const auto& m : integer_monomials(ell, N)) out.push_back(arith::to_rational(m));
  return out;
}

int dim_modular_forms(int weight) {
  if (weight < 0 || weight % 2 != 0) return 0;
  if (weight == 2) return 0;
  return weight / 12 + (weight % 12 == 2 ? 0 : 1);
}

int dim_cusp_forms(int weight) {
  if (weight < 12) return 0;
  return dim_modular_forms(weight) - 1;
}

std::size_t constraint_bound(int ell) { return 8 * monomial_exponents(ell).size() + 16; }

bool plus_forbidden(int ell, std::size_t n) {
  const std::size_t r = n % 4;
  // (-1)^ell n mod 4: for odd ell, residues 1 and 3 swap.
  const std::size_t s = (ell % 2 == 0) ? r : (4 - r) % 4;
  return s == 2 || s == 3;
}

PlusCuspBasis plus_cusp_basis(int ell, std::size_t N) {
  if (ell < 6) throw std::invalid_argument("plus_cusp_basis: ell must be at least 6");
  const std::size_t bound = constraint_bound(ell);
  const std::size_t prec = std::max(N, bound + 1);

  PlusCuspBasis out;
  out.ell = ell;
  out.monomials = monomial_exponents(ell);
  const std::size_t m = out.monomials.size();
  const auto monos = integer_monomials(ell, prec);

  std::vector<std::size_t> rows{0};
  for (std::size_t n = 1; n <= bound; ++n)
    if (plus_forbidden(ell, n)) rows.push_back(n);
  RationalMatrix constraints(rows.size(), m);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < m; ++c) constraints(r, c) = monos[c][rows[r]];

  const auto kernel = arith::nullspace(constraints);
  const int expected = dim_cusp_forms(2 * ell);
  if (static_cast<int>(kernel.size()) != expected)
    throw DimensionError("plus-space cusp dimension " + std::to_string(kernel.size()) +
                         " for weight " + std::to_string(2 * ell + 1) + "/2, expected dim S_" +
                         std::to_string(2 * ell) + " = " + std::to_string(expected));
  if (kernel.empty()) return out;

  // Row-reduce [coefficients | monomial coordinates] on the coefficient block.
  const std::size_t d = kernel.size();
  RationalMatrix kc(d, m);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t c = 0; c < m; ++c) kc(i, c) = kernel[i][c];
  RationalMatrix aug(d, prec + m);
  for (std::size_t i = 0; i < d; ++i) {
    const auto s = combine(monos, kc, i, prec);
    for (std::size_t n = 0; n < prec; ++n) aug(i, n) = s[n];
    for (std::size_t c = 0; c < m; ++c) aug(i, prec + c) = kc(i, c);
  }
  const auto pivots = arith::rref(aug, prec);
  if (pivots.size() != d)
    throw DimensionError("plus-space basis not linearly independent at precision " +
                         std::to_string(prec));

  out.coords = RationalMatrix(d, m);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t c = 0; c < m; ++c) out.coords(i, c) = aug(i, prec + c);
    ExactSeries s(prec);
    for (std::size_t n = 0; n < prec; ++n) s[n] = aug(i, n);
    out.forms.push_back(std::move(s));
  }
  out.leads = pivots;
  return out;
}

PlusCuspBasis expand_basis(const PlusCuspBasis& basis, std::size_t N) {
  PlusCuspBasis out = basis;
  out.forms.clear();
  if (basis.dimension() == 0) return out;
  const auto monos = integer_monomials(basis.ell, N);
  for (std::size_t i = 0; i < basis.dimension(); ++i) out.forms.push_back(combine(monos, basis.coords, i, N));
  return out;
}

}  // namespace halfwt::modforms
