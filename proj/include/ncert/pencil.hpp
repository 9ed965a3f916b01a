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

#ifndef NCERT_PENCIL_HPP
#define NCERT_PENCIL_HPP

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

#include "ncert/evaluate.hpp"
#include "ncert/matrix_poly.hpp"
#include "ncert/ratmat.hpp"

namespace ncert {

/// Linear pencil L(x) = A0 + sum_j A_j x_j with symmetric rational
/// coefficient matrices; monic when A0 = I. Its spectrahedron at size n is
/// D_L(n) = { X : L(X) > 0 } over symmetric n x n tuples.
class LinearPencil {
 public:
  /// coeffs = [A0, A1, ..., Ag]. Entries with asymmetry at most asym_tol are
  /// symmetrized exactly on admission; larger asymmetry is rejected.
  explicit LinearPencil(std::vector<RatMat> coeffs, double asym_tol = 1e-12)
      : A_(std::move(coeffs)) {
    if (A_.size() < 2) throw std::invalid_argument("LinearPencil: need A0 and at least one Aj");
    const int d = A_[0].rows();
    for (auto& a : A_) {
      if (a.rows() != d || a.cols() != d)
        throw std::invalid_argument("LinearPencil: coefficients must be square of equal size");
      if ((a - a.transpose()).max_abs() > asym_tol)
        throw std::invalid_argument("LinearPencil: coefficient is not symmetric");
      a = a.symmetrized();
    }
  }

  static LinearPencil monic(std::vector<RatMat> A_without_A0) {
    if (A_without_A0.empty()) throw std::invalid_argument("LinearPencil: empty coefficients");
    std::vector<RatMat> all;
    all.push_back(RatMat::identity(A_without_A0[0].rows()));
    for (auto& a : A_without_A0) all.push_back(std::move(a));
    return LinearPencil(std::move(all));
  }

  int size() const { return A_[0].rows(); }
  int g() const { return static_cast<int>(A_.size()) - 1; }
  bool is_monic() const { return A_[0] == RatMat::identity(size()); }

  const RatMat& A0() const { return A_[0]; }
  /// j in 1..g.
  const RatMat& A(int j) const { return A_[j]; }
  const std::vector<RatMat>& coefficients() const { return A_; }

  std::vector<Eigen::MatrixXd> coefficients_eigen() const {
    std::vector<Eigen::MatrixXd> v;
    for (const auto& a : A_) v.push_back(a.to_eigen());
    return v;
  }

  MatrixNcPoly to_matrix_poly() const {
    VariableContext ctx{g(), VarKind::Symmetric};
    MatrixNcPoly p(ctx, size(), size());
    p.add_term(Word::empty(), A_[0]);
    for (int j = 1; j <= g(); ++j) p.add_term(Word::single(j - 1), A_[j]);
    return p;
  }

 private:
  std::vector<RatMat> A_;
};

/// L(X) = A0 (x) I_n + sum_j A_j (x) X_j, a symmetric (size*n) x (size*n)
/// matrix.
inline Eigen::MatrixXd eval_pencil(const LinearPencil& L, const MatrixTuple& t) {
  if (static_cast<int>(t.X.size()) != L.g())
    throw std::invalid_argument("eval_pencil: tuple length does not match the pencil");
  Eigen::MatrixXd In = Eigen::MatrixXd::Identity(t.n, t.n);
  Eigen::MatrixXd acc = detail::kron_double(L.A0().to_eigen(), In);
  for (int j = 1; j <= L.g(); ++j)
    acc += detail::kron_double(L.A(j).to_eigen(), t.X[j - 1]);
  return acc;
}

inline RatMat eval_pencil(const LinearPencil& L, const RatTuple& t) {
  if (static_cast<int>(t.X.size()) != L.g())
    throw std::invalid_argument("eval_pencil: tuple length does not match the pencil");
  RatMat acc = kron(L.A0(), RatMat::identity(t.n));
  for (int j = 1; j <= L.g(); ++j) acc = acc + kron(L.A(j), t.X[j - 1]);
  return acc;
}

struct PencilMembership {
  double min_eig = 0;
  bool inside = false;         // strict: min_eig > 0
  bool inside_closure = false; // min_eig >= -1e-9
};

inline PencilMembership pencil_membership(const LinearPencil& L, const MatrixTuple& t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(eval_pencil(L, t));
  PencilMembership m;
  m.min_eig = es.eigenvalues().minCoeff();
  m.inside = m.min_eig > 0;
  m.inside_closure = m.min_eig >= -1e-9;
  return m;
}

/// Block-diagonal join; D_{L (+) M}(n) = D_L(n) n D_M(n) for all n.
inline LinearPencil pencil_direct_sum(const LinearPencil& L, const LinearPencil& M) {
  if (L.g() != M.g()) throw std::invalid_argument("pencil direct sum: variable count mismatch");
  std::vector<RatMat> coeffs;
  for (int j = 0; j <= L.g(); ++j)
    coeffs.push_back(direct_sum(L.coefficients()[j], M.coefficients()[j]));
  return LinearPencil(std::move(coeffs));
}

/// Monic arrow pencil of size g+1 whose spectrahedron is the operator ball
/// { X : sum X_j^2 < rho^2 I } (Schur complement in the (0,0) corner).
inline LinearPencil ball_pencil(int g, const Rational& rho) {
  if (g < 1) throw std::invalid_argument("ball_pencil: need g >= 1");
  if (rho <= 0) throw std::invalid_argument("ball_pencil: radius must be positive");
  std::vector<RatMat> A;
  for (int j = 1; j <= g; ++j) {
    RatMat a(g + 1, g + 1);
    a(0, j) = Rational(1) / rho;
    a(j, 0) = Rational(1) / rho;
    A.push_back(std::move(a));
  }
  return LinearPencil::monic(std::move(A));
}

/// Monic block-diagonal pencil of size 2g with blocks 1 +- x_j / beta; its
/// spectrahedron is the matrix cube { X : -beta I < X_j < beta I for all j }.
inline LinearPencil cube_pencil(int g, const Rational& beta) {
  if (g < 1) throw std::invalid_argument("cube_pencil: need g >= 1");
  if (beta <= 0) throw std::invalid_argument("cube_pencil: half-width must be positive");
  std::vector<RatMat> A;
  for (int j = 1; j <= g; ++j) {
    RatMat a(2 * g, 2 * g);
    a(2 * (j - 1), 2 * (j - 1)) = Rational(1) / beta;
    a(2 * (j - 1) + 1, 2 * (j - 1) + 1) = Rational(-1) / beta;
    A.push_back(std::move(a));
  }
  return LinearPencil::monic(std::move(A));
}

/// Coefficient-wise orthogonal conjugation U^T A_j U (U given as doubles;
/// entries become exact rationals of the doubles). For a monic pencil the
/// unit coefficient stays exactly I: a numerically orthogonal U would only
/// smear it by roundoff.
inline LinearPencil conjugate_pencil(const LinearPencil& L, const Eigen::MatrixXd& U) {
  RatMat Ur = RatMat::from_eigen(U);
  RatMat Ut = Ur.transpose();
  std::vector<RatMat> coeffs;
  for (int j = 0; j <= L.g(); ++j) {
    if (j == 0 && L.is_monic())
      coeffs.push_back(RatMat::identity(L.size()));
    else
      coeffs.push_back(Ut * L.coefficients()[j] * Ur);
  }
  return LinearPencil(std::move(coeffs));
}

}  // namespace ncert

#endif  // NCERT_PENCIL_HPP
