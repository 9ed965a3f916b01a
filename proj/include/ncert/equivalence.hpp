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

#ifndef NCERT_EQUIVALENCE_HPP
#define NCERT_EQUIVALENCE_HPP

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "ncert/pencil.hpp"
#include "ncert/sampling.hpp"

namespace ncert {

struct EquivalenceResult {
  bool equivalent = false;
  std::optional<Eigen::MatrixXd> witness;  // U orthogonal, U^T A_j U = B_j
  double witness_residual = 0;
  // "traces_match" when equivalent with a witness; "witness_failed" when the
  // trace criterion holds but no validated witness was constructed.
  std::string detail;
};

namespace detail_eq {

/// Checks tr w(A) = tr w(B) for every word w (Specht/Pearcy criterion, word
/// length up to 2 d^2). Words are enumerated through the stabilizing span of
/// the stacked tuple C_j = A_j (+) B_j: once no word matrix extends the span,
/// longer words add nothing, so the check over the stabilized span is the
/// full criterion with early exit on the first trace mismatch.
inline bool traces_match(const std::vector<Eigen::MatrixXd>& A,
                         const std::vector<Eigen::MatrixXd>& B, double rel_tol = 1e-8) {
  const int dA = static_cast<int>(A[0].rows());
  const int dB = static_cast<int>(B[0].rows());
  if (dA != dB) return false;
  const int g = static_cast<int>(A.size());
  const int n = dA + dB;

  std::vector<Eigen::MatrixXd> C;
  double scale = 0;
  for (int j = 0; j < g; ++j) scale = std::max(scale, std::max(A[j].norm(), B[j].norm()));
  if (scale == 0) return true;  // both tuples zero (sizes equal)
  for (int j = 0; j < g; ++j) {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
    c.topLeftCorner(dA, dA) = A[j] / scale;
    c.bottomRightCorner(dB, dB) = B[j] / scale;
    C.push_back(std::move(c));
  }

  auto trace_gap = [&](const Eigen::MatrixXd& M) {
    double ta = M.topLeftCorner(dA, dA).trace();
    double tb = M.bottomRightCorner(dB, dB).trace();
    return std::abs(ta - tb) <= rel_tol * std::max({1.0, std::abs(ta), std::abs(tb)});
  };

  std::vector<Eigen::VectorXd> basis;  // orthonormalized vectorizations
  std::vector<Eigen::MatrixXd> fresh{Eigen::MatrixXd::Identity(n, n)};
  if (!trace_gap(fresh[0])) return false;
  basis.push_back(Eigen::Map<Eigen::VectorXd>(fresh[0].data(), n * n).normalized());

  // the span stabilizes within n^2 levels (each level adds a dimension or
  // nothing, and nothing means stabilized), which dominates the 2 d^2 bound
  const int word_cap = n * n + 1;
  for (int len = 1; len <= word_cap && !fresh.empty(); ++len) {
    std::vector<Eigen::MatrixXd> next;
    for (const auto& M : fresh)
      for (int j = 0; j < g; ++j) {
        Eigen::MatrixXd cand = C[j] * M;  // a genuine word matrix
        if (!trace_gap(cand)) return false;
        Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(cand.data(), n * n);
        double vn = v.norm();
        if (vn < 1e-14) continue;
        for (int round = 0; round < 2; ++round)
          for (const auto& bvec : basis) v -= bvec.dot(v) * bvec;
        if (v.norm() > 1e-10 * vn) {
          basis.push_back(v.normalized());
          next.push_back(std::move(cand));
        }
      }
    fresh = std::move(next);
  }
  return true;
}

/// Basis of the intertwiner space { R : R A_j = B_j R }.
inline std::vector<Eigen::MatrixXd> intertwiner_space(const std::vector<Eigen::MatrixXd>& A,
                                                      const std::vector<Eigen::MatrixXd>& B) {
  const int d = static_cast<int>(A[0].rows());
  const int g = static_cast<int>(A.size());
  Eigen::MatrixXd K(g * d * d, d * d);
  Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
  auto kron = [&](const Eigen::MatrixXd& P, const Eigen::MatrixXd& Q) {
    Eigen::MatrixXd r(P.rows() * Q.rows(), P.cols() * Q.cols());
    for (Eigen::Index i = 0; i < P.rows(); ++i)
      for (Eigen::Index j = 0; j < P.cols(); ++j)
        r.block(i * Q.rows(), j * Q.cols(), Q.rows(), Q.cols()) = P(i, j) * Q;
    return r;
  };
  for (int j = 0; j < g; ++j)
    // vec(R A_j - B_j R) = (A_j^T (x) I - I (x) B_j) vec(R), column-major vec
    K.middleRows(j * d * d, d * d) = kron(A[j].transpose(), I) - kron(I, B[j]);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(K, Eigen::ComputeThinV);
  double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  std::vector<Eigen::MatrixXd> out;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()(k) <= 1e-10 * std::max(1.0, smax)) {
      Eigen::VectorXd v = svd.matrixV().col(k);
      out.push_back(Eigen::Map<Eigen::MatrixXd>(v.data(), d, d));
    }
  return out;
}

}  // namespace detail_eq

/// Decides simultaneous orthogonal equivalence of two tuples of symmetric
/// matrices by the trace-word criterion; on success constructs an orthogonal
/// witness from a generic element of the intertwiner space (its polar factor
/// intertwines exactly when the element is invertible, which holds
/// generically for equivalent tuples).
inline EquivalenceResult unitarily_equivalent_tuples(const std::vector<Eigen::MatrixXd>& A,
                                                     const std::vector<Eigen::MatrixXd>& B,
                                                     double witness_tol = 1e-6) {
  EquivalenceResult res;
  if (A.size() != B.size() || A.empty()) {
    res.detail = "tuple size mismatch";
    return res;
  }
  if (A[0].rows() != B[0].rows()) {
    res.detail = "sizes differ";
    return res;
  }
  if (!detail_eq::traces_match(A, B)) {
    res.detail = "trace mismatch";
    return res;
  }
  res.equivalent = true;

  const int d = static_cast<int>(A[0].rows());
  std::vector<Eigen::MatrixXd> space = detail_eq::intertwiner_space(A, B);
  double scale = 1e-12;
  for (const auto& a : A) scale = std::max(scale, a.cwiseAbs().maxCoeff());
  if (!space.empty()) {
    Rng rng(0x5EED);
    for (int attempt = 0; attempt < 8; ++attempt) {
      Eigen::MatrixXd R = Eigen::MatrixXd::Zero(d, d);
      std::normal_distribution<double> gauss(0.0, 1.0);
      for (const auto& N : space) R += gauss(rng) * N;
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(R, Eigen::ComputeFullU | Eigen::ComputeFullV);
      if (svd.singularValues().minCoeff() <= 1e-8 * svd.singularValues().maxCoeff()) continue;
      // polar factor P of R satisfies B_j = P A_j P^T; report U = P^T
      Eigen::MatrixXd P = svd.matrixU() * svd.matrixV().transpose();
      Eigen::MatrixXd U = P.transpose();
      double resid = 0;
      for (std::size_t j = 0; j < A.size(); ++j)
        resid = std::max(resid, (U.transpose() * A[j] * U - B[j]).cwiseAbs().maxCoeff());
      if (resid <= witness_tol * std::max(1.0, scale)) {
        res.witness = U;
        res.witness_residual = resid;
        res.detail = "traces_match";
        return res;
      }
    }
  }
  res.detail = "witness_failed";  // equivalent by traces, witness construction failed
  return res;
}

/// Unitary equivalence of monic linear pencils: compares coefficient tuples.
/// Pencils of different sizes are inequivalent; non-monic input is rejected.
inline EquivalenceResult unitarily_equivalent(const LinearPencil& L, const LinearPencil& M) {
  if (!L.is_monic() || !M.is_monic())
    throw std::invalid_argument("unitarily_equivalent: pencils must be monic");
  if (L.g() != M.g()) throw std::invalid_argument("unitarily_equivalent: variable counts differ");
  std::vector<Eigen::MatrixXd> A, B;
  for (int j = 1; j <= L.g(); ++j) A.push_back(L.A(j).to_eigen());
  for (int j = 1; j <= M.g(); ++j) B.push_back(M.A(j).to_eigen());
  return unitarily_equivalent_tuples(A, B);
}

}  // namespace ncert

#endif  // NCERT_EQUIVALENCE_HPP
