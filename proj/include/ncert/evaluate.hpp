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

#ifndef NCERT_EVALUATE_HPP
#define NCERT_EVALUATE_HPP

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

#include "ncert/poly.hpp"
#include "ncert/ratmat.hpp"

namespace ncert {

/// Evaluation point: g real n x n matrices. In symmetric contexts entries
/// must be symmetric; admission tolerates entry asymmetry up to 1e-12 and
/// then symmetrizes exactly.
struct MatrixTuple {
  int n = 0;
  std::vector<Eigen::MatrixXd> X;
};

inline MatrixTuple admit_tuple(const VariableContext& ctx, std::vector<Eigen::MatrixXd> mats,
                               double asym_tol = 1e-12) {
  if (static_cast<int>(mats.size()) != ctx.g)
    throw std::invalid_argument("matrix tuple length does not match the variable count");
  if (mats.empty()) throw std::invalid_argument("empty matrix tuple");
  const int n = static_cast<int>(mats[0].rows());
  for (auto& m : mats) {
    if (m.rows() != n || m.cols() != n)
      throw std::invalid_argument("matrix tuple entries must all be square of equal size");
    if (ctx.kind == VarKind::Symmetric) {
      if ((m - m.transpose()).cwiseAbs().maxCoeff() > asym_tol)
        throw std::invalid_argument("symmetric-context tuple entry is not symmetric");
      m = ((m + m.transpose()) / 2).eval();
    }
  }
  return MatrixTuple{n, std::move(mats)};
}

/// Exact-arithmetic evaluation point.
struct RatTuple {
  int n = 0;
  std::vector<RatMat> X;
};

inline RatTuple to_rational(const MatrixTuple& t) {
  RatTuple r;
  r.n = t.n;
  for (const auto& m : t.X) r.X.push_back(RatMat::from_eigen(m));
  return r;
}

namespace detail {

inline Eigen::MatrixXd mat_identity(const Eigen::MatrixXd&, int n) {
  return Eigen::MatrixXd::Identity(n, n);
}
inline RatMat mat_identity(const RatMat&, int n) { return RatMat::identity(n); }
inline Eigen::MatrixXd mat_transpose(const Eigen::MatrixXd& m) { return m.transpose(); }
inline RatMat mat_transpose(const RatMat& m) { return m.transpose(); }

template <class Mat>
Mat word_value(const Word& w, const std::vector<Mat>& X, int n) {
  Mat acc = mat_identity(X[0], n);
  for (Letter c : w.letters()) {
    const Mat& xj = X[letter_var(c)];
    acc = letter_star(c) ? Mat(acc * mat_transpose(xj)) : Mat(acc * xj);
  }
  return acc;
}

template <class Mat, class Scalar>
Mat evaluate_impl(const NcPoly& p, const std::vector<Mat>& X, int n,
                  Scalar (*conv)(const Rational&)) {
  if (static_cast<int>(X.size()) != p.context().g)
    throw std::invalid_argument("evaluate: tuple length does not match the variable count");
  Mat acc = Mat(mat_identity(X[0], n));
  acc = Scalar(conv(Rational(0))) * acc;  // zero of the right shape
  for (const auto& [w, c] : p.coeffs()) {
    Mat wv = word_value(w, X, n);
    acc = acc + Scalar(conv(c)) * wv;
  }
  return acc;
}

inline double conv_double(const Rational& r) { return to_double(r); }
inline Rational conv_rational(const Rational& r) { return r; }

}  // namespace detail

/// p(X); stars evaluate as transposes in free contexts. The empty word
/// evaluates to the identity, so the result of a constant polynomial c is
/// c * I_n.
inline Eigen::MatrixXd evaluate(const NcPoly& p, const MatrixTuple& t) {
  return detail::evaluate_impl<Eigen::MatrixXd, double>(p, t.X, t.n, detail::conv_double);
}

/// Exact evaluation over the rationals; evaluate(p*, X) equals the exact
/// transpose of evaluate(p, X).
inline RatMat evaluate(const NcPoly& p, const RatTuple& t) {
  return detail::evaluate_impl<RatMat, Rational>(p, t.X, t.n, detail::conv_rational);
}

inline MatrixTuple tuple_direct_sum(const MatrixTuple& a, const MatrixTuple& b) {
  if (a.X.size() != b.X.size()) throw std::invalid_argument("tuple direct sum: length mismatch");
  MatrixTuple r;
  r.n = a.n + b.n;
  for (std::size_t j = 0; j < a.X.size(); ++j) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(r.n, r.n);
    m.topLeftCorner(a.n, a.n) = a.X[j];
    m.bottomRightCorner(b.n, b.n) = b.X[j];
    r.X.push_back(std::move(m));
  }
  return r;
}

}  // namespace ncert

#endif  // NCERT_EVALUATE_HPP
