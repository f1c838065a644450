#include "halfwt/arith/matrix.hpp"

namespace halfwt::arith {

template class DenseMatrix<Rational>;
template class DenseMatrix<AlgebraicNumber>;

Polynomial charpoly(const RationalMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("charpoly: matrix is not square");
  const std::size_t n = m.rows();
  RationalMatrix h = m;

  // Similarity transforms to upper Hessenberg form.
  for (std::size_t k = 1; k + 1 < n; ++k) {
    std::size_t sel = k;
    while (sel < n && sgn(h(sel, k - 1)) == 0) ++sel;
    if (sel == n) continue;
    if (sel != k) {
      h.swap_rows(sel, k);
      for (std::size_t i = 0; i < n; ++i) std::swap(h(i, sel), h(i, k));
    }
    const Rational pivot = h(k, k - 1);
    for (std::size_t j = k + 1; j < n; ++j) {
      if (sgn(h(j, k - 1)) == 0) continue;
      const Rational u = h(j, k - 1) / pivot;
      for (std::size_t c = 0; c < n; ++c) h(j, c) -= u * h(k, c);
      for (std::size_t r = 0; r < n; ++r) h(r, k) += u * h(r, j);
    }
  }

  // p_m = (x - h_mm) p_{m-1} - sum_i h_im (prod_{j=i+1..m} h_{j,j-1}) p_{i-1}
  std::vector<Polynomial> p{Polynomial::constant(1)};
  for (std::size_t mi = 0; mi < n; ++mi) {
    Polynomial next = (Polynomial::x() - Polynomial::constant(h(mi, mi))) * p[mi];
    Rational prod = 1;
    for (std::size_t i = mi; i-- > 0;) {
      prod *= h(i + 1, i);
      if (sgn(prod) == 0) break;
      next -= Rational(prod * h(i, mi)) * p[i];
    }
    p.push_back(std::move(next));
  }
  return p.back();
}

RationalMatrix evaluate(const Polynomial& p, const RationalMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("evaluate: matrix is not square");
  RationalMatrix acc(m.rows(), m.cols());
  for (int i = p.degree(); i >= 0; --i) {
    acc = acc * m;
    for (std::size_t d = 0; d < m.rows(); ++d) acc(d, d) += p.coeff(i);
  }
  return acc;
}

}  // namespace halfwt::arith
