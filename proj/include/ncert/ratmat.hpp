/*
   Copyright 2026 the ncert authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef NCERT_RATMAT_HPP
#define NCERT_RATMAT_HPP

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <vector>

#include "ncert/rational.hpp"

namespace ncert {

/// Dense matrix over the exact rationals. Deliberately minimal: the exact
/// layer only needs ring operations, Kronecker products, block assembly, and
/// an exact positive-semidefiniteness test. (Eigen cannot be instantiated on
/// boost cpp_rational with the system headers, hence this type.)
class RatMat {
 public:
  RatMat() = default;
  RatMat(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, Rational(0)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("RatMat: negative dimension");
  }

  static RatMat identity(int n) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static RatMat zero(int rows, int cols) { return RatMat(rows, cols); }

  static RatMat from_eigen(const Eigen::MatrixXd& m) {
    RatMat r(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
    for (int i = 0; i < r.rows_; ++i)
      for (int j = 0; j < r.cols_; ++j) r(i, j) = rational_from_double(m(i, j));
    return r;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
  const Rational& operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

  Eigen::MatrixXd to_eigen() const {
    Eigen::MatrixXd m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(i, j) = to_double((*this)(i, j));
    return m;
  }

  RatMat transpose() const {
    RatMat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend RatMat operator+(const RatMat& x, const RatMat& y) {
    x.require_shape(y);
    RatMat r = x;
    for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] += y.a_[k];
    return r;
  }

  friend RatMat operator-(const RatMat& x, const RatMat& y) {
    x.require_shape(y);
    RatMat r = x;
    for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] -= y.a_[k];
    return r;
  }

  friend RatMat operator*(const Rational& c, const RatMat& x) {
    RatMat r = x;
    for (auto& v : r.a_) v *= c;
    return r;
  }

  friend RatMat operator*(const RatMat& x, const RatMat& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("RatMat: inner dimensions differ");
    RatMat r(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int k = 0; k < x.cols_; ++k) {
        const Rational& xv = x(i, k);
        if (xv == 0) continue;
        for (int j = 0; j < y.cols_; ++j) {
          const Rational& yv = y(k, j);
          if (yv != 0) r(i, j) += xv * yv;
        }
      }
    return r;
  }

  friend bool operator==(const RatMat& x, const RatMat& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

  bool is_zero() const {
    for (const auto& v : a_)
      if (v != 0) return false;
    return true;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  RatMat symmetrized() const {
    if (rows_ != cols_) throw std::invalid_argument("RatMat: symmetrize needs a square matrix");
    RatMat r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        r(i, j) = ((*this)(i, j) + (*this)(j, i)) / 2;
    return r;
  }

  double max_abs() const {
    double m = 0;
    for (const auto& v : a_) m = std::max(m, std::abs(to_double(v)));
    return m;
  }

  void set_block(int i0, int j0, const RatMat& b) {
    for (int i = 0; i < b.rows_; ++i)
      for (int j = 0; j < b.cols_; ++j) (*this)(i0 + i, j0 + j) = b(i, j);
  }

  RatMat block(int i0, int j0, int r, int c) const {
    RatMat b(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
    return b;
  }

  friend RatMat kron(const RatMat& x, const RatMat& y) {
    RatMat r(x.rows_ * y.rows_, x.cols_ * y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int j = 0; j < x.cols_; ++j) {
        if (x(i, j) == 0) continue;
        for (int k = 0; k < y.rows_; ++k)
          for (int l = 0; l < y.cols_; ++l) r(i * y.rows_ + k, j * y.cols_ + l) = x(i, j) * y(k, l);
      }
    return r;
  }

  friend RatMat direct_sum(const RatMat& x, const RatMat& y) {
    RatMat r(x.rows_ + y.rows_, x.cols_ + y.cols_);
    r.set_block(0, 0, x);
    r.set_block(x.rows_, x.cols_, y);
    return r;
  }

  /// Exact PSD test by fraction-free symmetric elimination: a symmetric
  /// rational matrix is PSD iff the elimination never meets a negative pivot
  /// and every zero pivot has a zero row.
  bool is_psd() const {
    if (!is_symmetric()) return false;
    RatMat m = *this;
    const int n = rows_;
    for (int k = 0; k < n; ++k) {
      if (m(k, k) < 0) return false;
      if (m(k, k) == 0) {
        for (int j = k + 1; j < n; ++j)
          if (m(k, j) != 0) return false;
        continue;
      }
      for (int i = k + 1; i < n; ++i) {
        if (m(i, k) == 0) continue;
        Rational f = m(i, k) / m(k, k);
        for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
      }
      for (int j = k + 1; j < n; ++j) m(k, j) = 0, m(j, k) = 0;
      // restore symmetry of the trailing block from the eliminated rows
      for (int i = k + 1; i < n; ++i)
        for (int j = i + 1; j < n; ++j) m(j, i) = m(i, j);
    }
    return true;
  }

 private:
  void require_shape(const RatMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("RatMat: shape mismatch");
  }

  int rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

/// Exact solve of A x = b by Gauss elimination with full row pivot search.
/// Returns nullopt when the system is inconsistent; free variables are set
/// to zero. A may be rectangular.
inline std::optional<std::vector<Rational>> solve_rational_linear(RatMat A,
                                                                  std::vector<Rational> b) {
  const int m = A.rows(), n = A.cols();
  if (static_cast<int>(b.size()) != m)
    throw std::invalid_argument("solve_rational_linear: rhs size mismatch");
  std::vector<int> pivot_col_of_row;
  int row = 0;
  for (int col = 0; col < n && row < m; ++col) {
    int piv = -1;
    for (int i = row; i < m; ++i)
      if (A(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row) {
      for (int j = 0; j < n; ++j) std::swap(A(row, j), A(piv, j));
      std::swap(b[row], b[piv]);
    }
    Rational d = A(row, col);
    for (int j = col; j < n; ++j) A(row, j) /= d;
    b[row] /= d;
    for (int i = 0; i < m; ++i) {
      if (i == row || A(i, col) == 0) continue;
      Rational f = A(i, col);
      for (int j = col; j < n; ++j) A(i, j) -= f * A(row, j);
      b[i] -= f * b[row];
    }
    pivot_col_of_row.push_back(col);
    ++row;
  }
  for (int i = row; i < m; ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<Rational> x(n, Rational(0));
  for (int i = 0; i < row; ++i) x[pivot_col_of_row[i]] = b[i];
  return x;
}

}  // namespace ncert

#endif  // NCERT_RATMAT_HPP
