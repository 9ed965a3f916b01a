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

#ifndef NCERT_DOMINATION_HPP
#define NCERT_DOMINATION_HPP

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "ncert/pencil.hpp"
#include "ncert/sampling.hpp"
#include "ncert/sdp/solver.hpp"

namespace ncert {

/// Isometry blocks V_1..V_mu certifying L2(x) = sum_m V_m^T L1(x) V_m, the
/// algebraic witness of the nc LMI domination D_{L1} <= D_{L2}.
struct DominationCertificate {
  std::vector<Eigen::MatrixXd> V;  // each d1 x d2
  double residual_isometry = 0;    // || sum V^T V - I ||_max
  double residual_match = 0;       // max_l || sum V^T A_{1,l} V - A_{2,l} ||_max
  int mu() const { return static_cast<int>(V.size()); }
};

enum class DominationStatus {
  dominated,
  not_dominated,
  precondition_unbounded,
  solver_failure,
};

struct DominationResult {
  DominationStatus status = DominationStatus::solver_failure;
  std::optional<DominationCertificate> certificate;
  /// Separating functional on non-domination: y indexes the Choi constraints
  /// (unitality pairs then per-variable coefficient pairs); Y0 and Yl are the
  /// same data folded back to d2 x d2 symmetric matrices, normalized so that
  /// tr(Y0) + sum_l <A_{2,l}, Yl> = 1 while I (x) Y0 + sum_l A_{1,l} (x) Yl <= 0.
  Eigen::VectorXd dual_y;
  std::vector<Eigen::MatrixXd> dual_blocks;  // [Y0, Y1..Yg]
  std::optional<MatrixTuple> witness;        // X with L1(X) > 0, L2(X) not > 0
  std::string witness_note;
  std::string message;
};

namespace detail_dom {

/// Builds the Choi feasibility program for tau(A_{1,l}) = A_{2,l}:
/// C in S^{d1 d2}, C >= 0, with unitality sum_p C_pp = I and coefficient
/// matching sum_pq (A_{1,l})_pq C_pq = A_{2,l}. Row index (p,i) -> p*d2+i.
inline sdp::SdpProblem choi_problem(const LinearPencil& L1, const LinearPencil& L2) {
  const int d1 = L1.size(), d2 = L2.size(), g = L1.g();
  const int n = d1 * d2;
  const int pairs = d2 * (d2 + 1) / 2;
  sdp::SdpProblem p;
  p.init_shapes({n}, (g + 1) * pairs);
  std::vector<Eigen::MatrixXd> A1, A2;
  for (int l = 1; l <= g; ++l) {
    A1.push_back(L1.A(l).to_eigen());
    A2.push_back(L2.A(l).to_eigen());
  }
  int row = 0;
  for (int l = 0; l <= g; ++l) {
    for (int i = 0; i < d2; ++i)
      for (int j = i; j < d2; ++j) {
        auto& M = p.A[row].block(0);
        if (l == 0) {
          for (int q = 0; q < d1; ++q) {
            M(q * d2 + i, q * d2 + j) += 0.5;
            M(q * d2 + j, q * d2 + i) += 0.5;
          }
          p.b[row] = (i == j) ? 1.0 : 0.0;
        } else {
          for (int q = 0; q < d1; ++q)
            for (int r = 0; r < d1; ++r) {
              double a = A1[l - 1](q, r);
              if (a == 0.0) continue;
              M(q * d2 + i, r * d2 + j) += 0.5 * a;
              M(r * d2 + j, q * d2 + i) += 0.5 * a;
            }
          p.b[row] = A2[l - 1](i, j);
        }
        ++row;
      }
  }
  return p;
}

/// Splits the eigenvectors of the Choi matrix into the certificate blocks
/// V_m = reshape(sqrt(lambda_m) u_m), dropping eigenvalues below
/// 1e-10 * lambda_max (rank truncation of a numerically singular C).
inline DominationCertificate extract_certificate(const Eigen::MatrixXd& C, int d1, int d2,
                                                 const LinearPencil& L1,
                                                 const LinearPencil& L2) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(((C + C.transpose()) / 2).eval());
  double lmax = es.eigenvalues().maxCoeff();
  DominationCertificate cert;
  for (Eigen::Index k = es.eigenvalues().size() - 1; k >= 0; --k) {
    double lam = es.eigenvalues()(k);
    if (lam <= 1e-10 * std::max(lmax, 0.0)) break;
    Eigen::VectorXd u = std::sqrt(lam) * es.eigenvectors().col(k);
    Eigen::MatrixXd V(d1, d2);
    for (int p = 0; p < d1; ++p) V.row(p) = u.segment(p * d2, d2).transpose();
    cert.V.push_back(std::move(V));
  }
  Eigen::MatrixXd iso = Eigen::MatrixXd::Zero(d2, d2);
  for (const auto& V : cert.V) iso += V.transpose() * V;
  cert.residual_isometry = (iso - Eigen::MatrixXd::Identity(d2, d2)).cwiseAbs().maxCoeff();
  for (int l = 1; l <= L1.g(); ++l) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d2, d2);
    for (const auto& V : cert.V) m += V.transpose() * L1.A(l).to_eigen() * V;
    cert.residual_match =
        std::max(cert.residual_match, (m - L2.A(l).to_eigen()).cwiseAbs().maxCoeff());
  }
  return cert;
}

struct ChoiOutcome {
  bool decided = false;
  bool feasible = false;
  sdp::FeasibilityResult feas;
};

/// Raw Choi feasibility (no boundedness precondition; a feasible SDP is a
/// valid domination certificate regardless, which is the direction the
/// bisections rely on).
inline ChoiOutcome choi_feasible(const LinearPencil& L1, const LinearPencil& L2,
                                 double tol = 1e-9) {
  sdp::SolveOptions opts;
  opts.tol = tol;
  ChoiOutcome out;
  out.feas = sdp::feasibility(choi_problem(L1, L2), opts);
  out.decided = out.feas.decided;
  out.feasible = out.feas.feasible;
  return out;
}

inline void require_monic(const LinearPencil& L, const char* who) {
  if (!L.is_monic()) throw std::invalid_argument(std::string(who) + ": pencil must be monic");
}

}  // namespace detail_dom

struct RadiusResult {
  bool bounded = false;
  double rho = 0;  // least r with D_L inside the operator ball of radius r
  bool decided = true;
  std::string message;
};

/// Least rho with sum_j X_j^2 <= rho^2 I for every X in D_L, by bisection of
/// the domination SDP against ball pencils over [1e-6, 1e6]; bounded = false
/// when even r = 1e6 fails. Endpoints of the final bracket are re-verified at
/// solver tolerance 1e-10.
inline RadiusResult radius(const LinearPencil& L, double rel_width = 2e-4) {
  detail_dom::require_monic(L, "radius");
  const int g = L.g();
  auto feasible_at = [&](double r, double tol) {
    auto out = detail_dom::choi_feasible(L, ball_pencil(g, rational_from_double(r)), tol);
    if (!out.decided) throw std::runtime_error("radius: SDP solver failure");
    return out.feasible;
  };
  RadiusResult res;
  double lo = 1e-6, hi = 1e6;
  if (!feasible_at(hi, 1e-9)) {
    res.bounded = false;
    res.message = "infeasible at r = 1e6";
    return res;
  }
  res.bounded = true;
  // exponential bracket from 1; never probes the extreme endpoints unless
  // the radius actually lives there
  if (feasible_at(1.0, 1e-9)) {
    hi = 1.0;
    for (;;) {
      double next = hi / 2;
      if (next <= lo) {
        res.rho = hi;
        res.message = "radius at or below the lower bisection bound";
        return res;
      }
      if (feasible_at(next, 1e-9)) {
        hi = next;
      } else {
        lo = next;
        break;
      }
    }
  } else {
    lo = 1.0;
    while (lo * 2 < hi && !feasible_at(lo * 2, 1e-9)) lo *= 2;
    hi = std::min(hi, lo * 2);
  }
  while ((hi - lo) / hi > rel_width) {
    double mid = std::sqrt(lo * hi);
    (feasible_at(mid, 1e-9) ? hi : lo) = mid;
  }
  if (!feasible_at(hi, 1e-10) || feasible_at(lo, 1e-10)) {
    // boundary bled through solver tolerance; widen deterministically
    hi *= 1 + rel_width;
    lo /= 1 + rel_width;
  }
  res.rho = hi;
  return res;
}

struct MatrixCubeResult {
  double beta = 0;  // largest certified cube half-width
  bool decided = true;
  std::string message;
};

/// Largest beta with the matrix cube of half-width beta dominated by L, by
/// bisection of choi_feasible(cube(b), L). The returned beta is certified
/// feasible and the bracket top certified infeasible.
inline MatrixCubeResult matrix_cube(const LinearPencil& L, double rel_width = 2e-4) {
  detail_dom::require_monic(L, "matrix_cube");
  RadiusResult rad = radius(L);
  if (!rad.bounded) throw std::invalid_argument("matrix_cube: D_L(1) is unbounded");
  const int g = L.g();
  auto feasible_at = [&](double b, double tol) {
    auto out = detail_dom::choi_feasible(cube_pencil(g, rational_from_double(b)), L, tol);
    if (!out.decided) throw std::runtime_error("matrix_cube: SDP solver failure");
    return out.feasible;
  };
  double lo = 1e-6, hi = std::max(2e-6, 2 * rad.rho);  // cube of half-width beta needs beta <= rho
  MatrixCubeResult res;
  if (!feasible_at(lo, 1e-9)) {
    res.beta = 0;
    res.message = "no cube at the lower bisection bound";
    return res;
  }
  while ((hi - lo) / hi > rel_width) {
    double mid = std::sqrt(lo * hi);
    (feasible_at(mid, 1e-9) ? lo : hi) = mid;
  }
  if (!feasible_at(lo, 1e-10) || feasible_at(hi, 1e-10)) {
    hi *= 1 + rel_width;
    lo /= 1 + rel_width;
  }
  res.beta = lo;
  return res;
}

/// Decides D_{L1} <= D_{L2} through complete positivity of the coefficient
/// map (Choi matrix PSD + unitality + matching). Requires D_{L1}(1) bounded;
/// an unbounded left-hand side returns precondition_unbounded rather than a
/// verdict. On success the certificate is eigen-extracted and its invariants
/// verified; on failure the separating dual functional is returned and a
/// small seeded search tries to produce a concrete witness tuple.
inline DominationResult check_domination(const LinearPencil& L1, const LinearPencil& L2,
                                         unsigned seed = 0) {
  detail_dom::require_monic(L1, "check_domination");
  detail_dom::require_monic(L2, "check_domination");
  if (L1.g() != L2.g())
    throw std::invalid_argument("check_domination: variable counts differ");
  DominationResult res;

  RadiusResult rad = radius(L1);
  if (!rad.bounded) {
    res.status = DominationStatus::precondition_unbounded;
    res.message = "D_{L1}(1) is unbounded";
    return res;
  }

  sdp::SdpProblem choi = detail_dom::choi_problem(L1, L2);
  sdp::SolveOptions copts;
  copts.tol = 1e-10;
  sdp::FeasibilityResult feas = sdp::feasibility(choi, copts);
  if (!feas.decided) {
    res.status = DominationStatus::solver_failure;
    res.message = feas.message;
    return res;
  }
  const int d1 = L1.size(), d2 = L2.size();
  if (feas.feasible) {
    Eigen::VectorXd u;
    sdp::project_onto_constraints(choi, feas.X, u);
    DominationCertificate cert =
        detail_dom::extract_certificate(feas.X.block(0), d1, d2, L1, L2);
    if (std::max(cert.residual_isometry, cert.residual_match) > 1e-8) {
      res.status = DominationStatus::solver_failure;
      res.message = "certificate residuals exceeded 1e-8";
      return res;
    }
    res.status = DominationStatus::dominated;
    res.certificate = std::move(cert);
    return res;
  }

  res.status = DominationStatus::not_dominated;
  res.dual_y = feas.farkas_y;
  if (res.dual_y.size()) {
    // fold back to d2 x d2 symmetric blocks [Y0, Y1..Yg]
    int row = 0;
    for (int l = 0; l <= L1.g(); ++l) {
      Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(d2, d2);
      for (int i = 0; i < d2; ++i)
        for (int j = i; j < d2; ++j) {
          double v = res.dual_y[row++];
          Y(i, j) = (i == j) ? v : v / 2;
          Y(j, i) = Y(i, j);
        }
      res.dual_blocks.push_back(std::move(Y));
    }
  }

  // Seeded witness search at small matrix sizes; any returned witness is
  // validated, absence changes nothing about the verdict.
  Rng rng(seed ^ 0x5EEDu);
  VariableContext ctx{L1.g(), VarKind::Symmetric};
  for (int n = 1; n <= 2 && !res.witness; ++n) {
    for (int trial = 0; trial < 400; ++trial) {
      MatrixTuple X = random_tuple(rng, ctx, n, 1.0);
      Eigen::MatrixXd l1x = eval_pencil(L1, X);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l1x, Eigen::EigenvaluesOnly);
      // pull X inside D_{L1}: L1(sX) = (1-s) I + s L1(X) > 0 for s slightly
      // below 1/(1 - lmin) when lmin < 1
      double lmin = es.eigenvalues().minCoeff();
      double s = lmin > 0 ? 1.0 : 0.95 / (1.0 - lmin);
      for (auto& m : X.X) m *= s;
      if (pencil_membership(L1, X).min_eig <= 1e-9) continue;
      if (pencil_membership(L2, X).min_eig < -1e-9) {
        res.witness = X;
        res.witness_note = "found by seeded sampling";
        break;
      }
    }
  }
  if (!res.witness) res.witness_note = "separated, no finite witness extracted";
  return res;
}

}  // namespace ncert

#endif  // NCERT_DOMINATION_HPP
