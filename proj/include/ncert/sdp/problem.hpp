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

#ifndef NCERT_SDP_PROBLEM_HPP
#define NCERT_SDP_PROBLEM_HPP

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace ncert::sdp {

/// Symmetric block-diagonal matrix; the variable/coefficient format of the
/// solver.
class BlockMatrix {
 public:
  BlockMatrix() = default;
  explicit BlockMatrix(const std::vector<int>& sizes) {
    for (int s : sizes) blocks_.emplace_back(Eigen::MatrixXd::Zero(s, s));
  }

  static BlockMatrix identity(const std::vector<int>& sizes, double scale = 1.0) {
    BlockMatrix m(sizes);
    for (auto& b : m.blocks_) b = scale * Eigen::MatrixXd::Identity(b.rows(), b.cols());
    return m;
  }

  std::size_t block_count() const { return blocks_.size(); }
  Eigen::MatrixXd& block(std::size_t k) { return blocks_[k]; }
  const Eigen::MatrixXd& block(std::size_t k) const { return blocks_[k]; }

  int total_dim() const {
    int n = 0;
    for (const auto& b : blocks_) n += static_cast<int>(b.rows());
    return n;
  }

  double dot(const BlockMatrix& o) const {
    double s = 0;
    for (std::size_t k = 0; k < blocks_.size(); ++k)
      s += blocks_[k].cwiseProduct(o.blocks_[k]).sum();
    return s;
  }

  double norm() const {
    double s = 0;
    for (const auto& b : blocks_) s += b.squaredNorm();
    return std::sqrt(s);
  }

  double max_abs() const {
    double s = 0;
    for (const auto& b : blocks_)
      if (b.size() > 0) s = std::max(s, b.cwiseAbs().maxCoeff());
    return s;
  }

  double min_eigenvalue() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& b : blocks_) {
      if (b.rows() == 0) continue;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b, Eigen::EigenvaluesOnly);
      m = std::min(m, es.eigenvalues().minCoeff());
    }
    return m;
  }

  void symmetrize() {
    for (auto& b : blocks_) b = ((b + b.transpose()) / 2).eval();
  }

  BlockMatrix& operator+=(const BlockMatrix& o) {
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += o.blocks_[k];
    return *this;
  }
  BlockMatrix& operator-=(const BlockMatrix& o) {
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] -= o.blocks_[k];
    return *this;
  }
  BlockMatrix& operator*=(double c) {
    for (auto& b : blocks_) b *= c;
    return *this;
  }
  friend BlockMatrix operator+(BlockMatrix a, const BlockMatrix& b) { return a += b; }
  friend BlockMatrix operator-(BlockMatrix a, const BlockMatrix& b) { return a -= b; }
  friend BlockMatrix operator*(double c, BlockMatrix a) { return a *= c; }

 private:
  std::vector<Eigen::MatrixXd> blocks_;
};

/// Standard-form problem
///
///   min <C, X> + c_free . u
///   s.t. <A_i, X> + F(i,:) . u = b_i,   X >= 0 (block-diagonal), u free.
///
/// Free variables carry objective/constraint columns directly instead of the
/// usual +/- split; the solver eliminates them inside the Newton system.
struct SdpProblem {
  std::vector<int> block_sizes;
  BlockMatrix C;
  std::vector<BlockMatrix> A;
  Eigen::VectorXd b;
  Eigen::MatrixXd F;       // m x k free-variable coefficients (k may be 0)
  Eigen::VectorXd c_free;  // k

  int m() const { return static_cast<int>(A.size()); }
  int free_count() const { return static_cast<int>(c_free.size()); }
  int total_dim() const {
    int n = 0;
    for (int s : block_sizes) n += s;
    return n;
  }

  void init_shapes(std::vector<int> sizes, int constraints, int free_vars = 0) {
    block_sizes = std::move(sizes);
    C = BlockMatrix(block_sizes);
    A.assign(constraints, BlockMatrix(block_sizes));
    b = Eigen::VectorXd::Zero(constraints);
    F = Eigen::MatrixXd::Zero(constraints, free_vars);
    c_free = Eigen::VectorXd::Zero(free_vars);
  }

  void validate(int dim_cap) const {
    if (total_dim() > dim_cap)
      throw std::invalid_argument("SDP dimension " + std::to_string(total_dim()) +
                                  " exceeds the cap " + std::to_string(dim_cap));
    if (b.size() != m() || F.rows() != m())
      throw std::invalid_argument("SDP: constraint count mismatch");
    auto check_sym = [](const BlockMatrix& M, const char* what) {
      for (std::size_t k = 0; k < M.block_count(); ++k) {
        const auto& blk = M.block(k);
        if (blk.size() > 0 && (blk - blk.transpose()).cwiseAbs().maxCoeff() > 1e-12)
          throw std::invalid_argument(std::string("SDP: non-symmetric ") + what);
      }
    };
    check_sym(C, "objective matrix");
    for (const auto& Ai : A) check_sym(Ai, "constraint matrix");
  }
};

/// A(X) for all constraints.
inline Eigen::VectorXd apply_constraints(const SdpProblem& p, const BlockMatrix& X) {
  Eigen::VectorXd v(p.m());
  for (int i = 0; i < p.m(); ++i) v[i] = p.A[i].dot(X);
  return v;
}

/// A^T(y) = sum_i y_i A_i.
inline BlockMatrix adjoint(const SdpProblem& p, const Eigen::VectorXd& y) {
  BlockMatrix M(p.block_sizes);
  for (int i = 0; i < p.m(); ++i) {
    if (y[i] == 0.0) continue;
    for (std::size_t k = 0; k < M.block_count(); ++k) M.block(k) += y[i] * p.A[i].block(k);
  }
  return M;
}

/// Isometric vectorization of the symmetric blocks (off-diagonals scaled by
/// sqrt(2)), used by the presolve rank analysis.
inline Eigen::VectorXd svec_with_free(const SdpProblem& p, int i) {
  std::vector<double> out;
  const double rt2 = std::sqrt(2.0);
  for (std::size_t k = 0; k < p.A[i].block_count(); ++k) {
    const auto& blk = p.A[i].block(k);
    for (int r = 0; r < blk.rows(); ++r) {
      out.push_back(blk(r, r));
      for (int c = r + 1; c < blk.cols(); ++c) out.push_back(rt2 * blk(r, c));
    }
  }
  for (int j = 0; j < p.free_count(); ++j) out.push_back(p.F(i, j));
  return Eigen::Map<Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size()));
}

/// Minimum-norm correction moving X onto the affine constraint set
/// A(X) + F u = b; used to polish nearly-converged solutions before
/// certificate extraction. The correction lives in span{A_i}, so a small
/// residual gives a small perturbation.
inline void project_onto_constraints(const SdpProblem& p, BlockMatrix& X, Eigen::VectorXd& u) {
  const int m = p.m();
  if (m == 0) return;
  Eigen::VectorXd r = p.b - apply_constraints(p, X);
  if (p.free_count() > 0 && u.size() == p.free_count()) r -= p.F * u;
  Eigen::MatrixXd G(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      double v = p.A[i].dot(p.A[j]);
      if (p.free_count() > 0) v += p.F.row(i).dot(p.F.row(j));
      G(i, j) = v;
      G(j, i) = v;
    }
  Eigen::VectorXd lam = G.completeOrthogonalDecomposition().solve(r);
  for (int i = 0; i < m; ++i) {
    if (lam[i] == 0.0) continue;
    for (std::size_t k = 0; k < X.block_count(); ++k) X.block(k) += lam[i] * p.A[i].block(k);
  }
  if (p.free_count() > 0 && u.size() == p.free_count()) u += p.F.transpose() * lam;
  X.symmetrize();
}

struct PresolveResult {
  SdpProblem reduced;
  std::vector<int> kept;          // indices into the original constraint list
  std::vector<double> row_scale;  // kept rows were divided by these
  std::vector<int> dropped;       // dependent constraints removed
  bool inconsistent = false;
  Eigen::VectorXd farkas_y;  // exact-combination ray when inconsistent
};

/// Drops linearly dependent constraints; a dependent row with mismatched
/// right-hand side is an inconsistency and yields a Farkas combination
/// y (A^T(y) = 0, b.y = 1).
inline PresolveResult presolve(const SdpProblem& p, double tol = 1e-10) {
  PresolveResult res;
  const int m = p.m();
  std::vector<Eigen::VectorXd> basis;          // orthonormalized kept rows
  std::vector<Eigen::VectorXd> combo;          // expansion of basis in original rows
  double scale = 0;
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd v = svec_with_free(p, i);
    scale = std::max(scale, v.norm());
    Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(m);  // v = sum coeffs_j row_j + residual
    coeffs[i] = 1.0;
    Eigen::VectorXd r = v;
    // two rounds of modified Gram-Schmidt for stability
    for (int round = 0; round < 2; ++round)
      for (std::size_t k = 0; k < basis.size(); ++k) {
        double c = basis[k].dot(r);
        r -= c * basis[k];
        coeffs -= c * combo[k];
      }
    if (r.norm() > tol * std::max(1.0, scale)) {
      combo.push_back(coeffs / r.norm());
      basis.push_back(r / r.norm());
      res.kept.push_back(i);
    } else {
      // row i is a combination of kept rows (coeffs expresses the residual
      // combination: sum_j coeffs_j row_j ~ 0); check the rhs agrees
      double gap = coeffs.dot(p.b);
      if (std::abs(gap) > tol * std::max(1.0, p.b.cwiseAbs().maxCoeff())) {
        res.inconsistent = true;
        res.farkas_y = coeffs / gap;  // A^T(ray) ~ 0, b.ray = 1
        return res;
      }
      res.dropped.push_back(i);
    }
  }
  res.reduced.block_sizes = p.block_sizes;
  res.reduced.C = p.C;
  res.reduced.c_free = p.c_free;
  res.reduced.b = Eigen::VectorXd(res.kept.size());
  res.reduced.F = Eigen::MatrixXd(res.kept.size(), p.free_count());
  for (std::size_t i = 0; i < res.kept.size(); ++i) {
    // normalize each kept row to unit data norm; mixed constraint scales
    // otherwise degrade the Schur complement badly
    int orig = res.kept[i];
    double s = std::max({p.A[orig].norm(), p.F.row(orig).norm(), 1e-300});
    res.row_scale.push_back(s);
    res.reduced.A.push_back((1.0 / s) * p.A[orig]);
    res.reduced.b[static_cast<Eigen::Index>(i)] = p.b[orig] / s;
    res.reduced.F.row(static_cast<Eigen::Index>(i)) = p.F.row(orig) / s;
  }
  return res;
}

}  // namespace ncert::sdp

#endif  // NCERT_SDP_PROBLEM_HPP
