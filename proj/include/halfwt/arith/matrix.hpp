#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "halfwt/arith/number_field.hpp"
#include "halfwt/arith/polynomial.hpp"

namespace halfwt::arith {

/// Row-major dense matrix over an exact scalar type (Rational or AlgebraicNumber).
template <typename Scalar>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}
  DenseMatrix(std::initializer_list<std::initializer_list<Scalar>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("DenseMatrix: ragged initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    for (const auto& v : data_)
      if (!arith::is_zero(v)) return false;
    return true;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  DenseMatrix& operator+=(const DenseMatrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  DenseMatrix& operator-=(const DenseMatrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  DenseMatrix& operator*=(const Scalar& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(const Scalar& s, DenseMatrix a) { return a *= s; }
  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("DenseMatrix: shape mismatch in product");
    DenseMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (arith::is_zero(a(i, k))) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }
  friend std::vector<Scalar> operator*(const DenseMatrix& a, const std::vector<Scalar>& v) {
    if (a.cols_ != v.size()) throw std::invalid_argument("DenseMatrix: shape mismatch in product");
    std::vector<Scalar> out(a.rows_, Scalar(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }
  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same(const DenseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("DenseMatrix: shape mismatch");
  }
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

using RationalMatrix = DenseMatrix<Rational>;
using AlgebraicMatrix = DenseMatrix<AlgebraicNumber>;

/// In-place Gauss-Jordan reduction to reduced row-echelon form. Only the
/// first `pivot_limit` columns are eligible as pivots (all by default), so
/// augmented systems can be reduced in one pass. Returns the pivot columns.
template <typename Scalar>
std::vector<std::size_t> rref(DenseMatrix<Scalar>& m, std::size_t pivot_limit = static_cast<std::size_t>(-1)) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  const std::size_t limit = std::min(pivot_limit, m.cols());
  for (std::size_t col = 0; col < limit && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && is_zero(m(sel, col))) ++sel;
    if (sel == m.rows()) continue;
    m.swap_rows(sel, row);
    const Scalar inv = Scalar(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      const Scalar f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <typename Scalar>
std::size_t rank(DenseMatrix<Scalar> m) {
  return rref(m).size();
}

/// Basis of the right null space {v : M v = 0}, one vector per free column,
/// with a 1 in that column.
template <typename Scalar>
std::vector<std::vector<Scalar>> nullspace(DenseMatrix<Scalar> m) {
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> v(m.cols(), Scalar(0));
    v[f] = Scalar(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

class EigenspaceError : public CertificateError {
 public:
  using CertificateError::CertificateError;
};

/// Nonzero kernel vector of a d x d matrix of rank d-1, scaled so its first
/// nonzero coordinate is 1. Throws EigenspaceError for any other rank.
template <typename Scalar>
std::vector<Scalar> kernel_vector(const DenseMatrix<Scalar>& m) {
  if (!m.is_square()) throw std::invalid_argument("kernel_vector: matrix is not square");
  auto basis = nullspace(m);
  if (basis.size() != 1)
    throw EigenspaceError("unexpected eigenspace dimension " + std::to_string(basis.size()));
  auto v = std::move(basis.front());
  for (const auto& c : v) {
    if (is_zero(c)) continue;
    const Scalar inv = Scalar(1) / c;
    for (auto& x : v) x *= inv;
    break;
  }
  return v;
}

/// det(xI - M), computed exactly via reduction to Hessenberg form.
Polynomial charpoly(const RationalMatrix& m);

/// p(M) by Horner's rule.
RationalMatrix evaluate(const Polynomial& p, const RationalMatrix& m);

extern template class DenseMatrix<Rational>;
extern template class DenseMatrix<AlgebraicNumber>;

}  // namespace halfwt::arith
