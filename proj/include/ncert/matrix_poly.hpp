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

#ifndef NCERT_MATRIX_POLY_HPP
#define NCERT_MATRIX_POLY_HPP

#include <map>
#include <stdexcept>

#include "ncert/evaluate.hpp"
#include "ncert/poly.hpp"
#include "ncert/ratmat.hpp"

namespace ncert {

/// Matrix-valued nc polynomial: finite map word -> rectangular rational
/// coefficient matrix, all of one shape. Evaluation acts through the
/// Kronecker product, p(X) = sum p_w (x) w(X).
class MatrixNcPoly {
 public:
  MatrixNcPoly(VariableContext ctx, int rows, int cols) : ctx_(ctx), rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("MatrixNcPoly: bad shape");
  }

  static MatrixNcPoly from_scalar(const NcPoly& p) {
    MatrixNcPoly m(p.context(), 1, 1);
    for (const auto& [w, c] : p.coeffs()) {
      RatMat b(1, 1);
      b(0, 0) = c;
      m.add_term(w, b);
    }
    return m;
  }

  const VariableContext& context() const { return ctx_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::map<Word, RatMat, WordLess>& coeffs() const { return coeffs_; }

  int degree() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first.degree(); }
  bool is_zero() const { return coeffs_.empty(); }

  void add_term(const Word& w, const RatMat& m) {
    if (m.rows() != rows_ || m.cols() != cols_)
      throw std::invalid_argument("MatrixNcPoly: coefficient shape mismatch");
    if (m.is_zero()) return;
    auto [it, inserted] = coeffs_.emplace(w, m);
    if (!inserted) {
      it->second = it->second + m;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  friend MatrixNcPoly operator+(const MatrixNcPoly& a, const MatrixNcPoly& b) {
    require_same_context(a.ctx_, b.ctx_);
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("MatrixNcPoly: shape mismatch in addition");
    MatrixNcPoly r = a;
    for (const auto& [w, m] : b.coeffs_) r.add_term(w, m);
    return r;
  }

  friend MatrixNcPoly operator-(const MatrixNcPoly& a, const MatrixNcPoly& b) {
    return a + (Rational(-1) * b);
  }

  friend MatrixNcPoly operator*(const Rational& c, const MatrixNcPoly& p) {
    MatrixNcPoly r(p.ctx_, p.rows_, p.cols_);
    for (const auto& [w, m] : p.coeffs_) r.add_term(w, c * m);
    return r;
  }

  friend MatrixNcPoly operator*(const MatrixNcPoly& a, const MatrixNcPoly& b) {
    require_same_context(a.ctx_, b.ctx_);
    if (a.cols_ != b.rows_)
      throw std::invalid_argument("MatrixNcPoly: inner shapes do not conform");
    MatrixNcPoly r(a.ctx_, a.rows_, b.cols_);
    for (const auto& [wa, ma] : a.coeffs_)
      for (const auto& [wb, mb] : b.coeffs_) r.add_term(wa.concat(wb), ma * mb);
    return r;
  }

  /// p* = sum p_w^T w*.
  MatrixNcPoly involution() const {
    MatrixNcPoly r(ctx_, cols_, rows_);
    for (const auto& [w, m] : coeffs_) r.add_term(w.involution(ctx_.kind), m.transpose());
    return r;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    return coeffs_ == involution().coeffs_;
  }

  friend MatrixNcPoly direct_sum(const MatrixNcPoly& a, const MatrixNcPoly& b) {
    require_same_context(a.ctx_, b.ctx_);
    MatrixNcPoly r(a.ctx_, a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (const auto& [w, m] : a.coeffs_) {
      RatMat big(r.rows_, r.cols_);
      big.set_block(0, 0, m);
      r.add_term(w, big);
    }
    for (const auto& [w, m] : b.coeffs_) {
      RatMat big(r.rows_, r.cols_);
      big.set_block(a.rows_, a.cols_, m);
      r.add_term(w, big);
    }
    return r;
  }

  friend bool operator==(const MatrixNcPoly& a, const MatrixNcPoly& b) {
    return a.ctx_ == b.ctx_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.coeffs_ == b.coeffs_;
  }

 private:
  VariableContext ctx_;
  int rows_, cols_;
  std::map<Word, RatMat, WordLess> coeffs_;
};

namespace detail {
inline Eigen::MatrixXd kron_double(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}
}  // namespace detail

/// p(X) of shape (rows*n) x (cols*n).
inline Eigen::MatrixXd evaluate(const MatrixNcPoly& p, const MatrixTuple& t) {
  if (static_cast<int>(t.X.size()) != p.context().g)
    throw std::invalid_argument("evaluate: tuple length does not match the variable count");
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(p.rows() * t.n, p.cols() * t.n);
  for (const auto& [w, m] : p.coeffs())
    acc += detail::kron_double(m.to_eigen(), detail::word_value(w, t.X, t.n));
  return acc;
}

inline RatMat evaluate(const MatrixNcPoly& p, const RatTuple& t) {
  if (static_cast<int>(t.X.size()) != p.context().g)
    throw std::invalid_argument("evaluate: tuple length does not match the variable count");
  RatMat acc(p.rows() * t.n, p.cols() * t.n);
  for (const auto& [w, m] : p.coeffs()) acc = acc + kron(m, detail::word_value(w, t.X, t.n));
  return acc;
}

}  // namespace ncert

#endif  // NCERT_MATRIX_POLY_HPP
