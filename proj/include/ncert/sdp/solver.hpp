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

#ifndef NCERT_SDP_SOLVER_HPP
#define NCERT_SDP_SOLVER_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include "ncert/sdp/problem.hpp"

namespace ncert::sdp {

enum class SdpStatus { optimal, primal_infeasible, dual_infeasible, max_iter, numerical_failure };

inline const char* to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::optimal: return "optimal";
    case SdpStatus::primal_infeasible: return "primal_infeasible";
    case SdpStatus::dual_infeasible: return "dual_infeasible";
    case SdpStatus::max_iter: return "max_iter";
    default: return "numerical_failure";
  }
}

struct SolveOptions {
  double tol = 1e-9;        // relative primal/dual residual and gap target
  int max_iter = 200;
  double step_fraction = 0.98;
  int dim_cap = 2000;       // overridable via NCERT_SDP_MAXDIM
};

inline int effective_dim_cap(const SolveOptions& opts) {
  if (const char* env = std::getenv("NCERT_SDP_MAXDIM")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return opts.dim_cap;
}

struct SdpSolution {
  SdpStatus status = SdpStatus::numerical_failure;
  BlockMatrix X, S;
  Eigen::VectorXd y;
  Eigen::VectorXd u;  // free variables
  double primal_obj = 0, dual_obj = 0;
  double primal_res = 0, dual_res = 0, rel_gap = 0, mu = 0;
  int iterations = 0;
  Eigen::VectorXd farkas_y;   // dual improving ray certifying primal infeasibility
  BlockMatrix primal_ray;     // primal improving ray certifying dual infeasibility
  std::vector<int> dropped_constraints;
  std::string message;
};

namespace detail {

struct NtScaling {
  std::vector<Eigen::MatrixXd> W;     // per block
  std::vector<Eigen::LLT<Eigen::MatrixXd>> Sfac;
  bool ok = false;
};

inline NtScaling nt_scaling(const BlockMatrix& X, const BlockMatrix& S) {
  NtScaling out;
  for (std::size_t k = 0; k < X.block_count(); ++k) {
    Eigen::LLT<Eigen::MatrixXd> lltX(X.block(k));
    Eigen::LLT<Eigen::MatrixXd> lltS(S.block(k));
    if (lltX.info() != Eigen::Success || lltS.info() != Eigen::Success) return out;
    Eigen::MatrixXd L = lltX.matrixL();
    Eigen::MatrixXd M = L.transpose() * S.block(k) * L;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0) return out;
    Eigen::VectorXd lam = es.eigenvalues().cwiseSqrt().cwiseInverse();
    Eigen::MatrixXd Minvhalf = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
    out.W.push_back(L * Minvhalf * L.transpose());
    out.Sfac.push_back(std::move(lltS));
  }
  out.ok = true;
  return out;
}

inline BlockMatrix sandwich(const NtScaling& nt, const BlockMatrix& M) {
  BlockMatrix out = M;
  for (std::size_t k = 0; k < out.block_count(); ++k)
    out.block(k) = nt.W[k] * M.block(k) * nt.W[k];
  out.symmetrize();
  return out;
}

inline BlockMatrix inverse_of(const std::vector<Eigen::LLT<Eigen::MatrixXd>>& fac,
                              const BlockMatrix& shape) {
  BlockMatrix out = shape;
  for (std::size_t k = 0; k < out.block_count(); ++k) {
    int n = static_cast<int>(out.block(k).rows());
    out.block(k) = fac[k].solve(Eigen::MatrixXd::Identity(n, n));
  }
  out.symmetrize();
  return out;
}

/// Largest alpha in [0, cap] with P + alpha*D >= 0 (P > 0).
inline double max_step(const BlockMatrix& P, const BlockMatrix& D, double cap = 1.0) {
  double alpha = cap;
  for (std::size_t k = 0; k < P.block_count(); ++k) {
    Eigen::LLT<Eigen::MatrixXd> llt(P.block(k));
    if (llt.info() != Eigen::Success) return 0.0;
    Eigen::MatrixXd L = llt.matrixL();
    Eigen::MatrixXd G = L.triangularView<Eigen::Lower>().solve(D.block(k));
    G = L.triangularView<Eigen::Lower>().solve(G.transpose().eval());
    G = ((G + G.transpose()) / 2).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
    double lmin = es.eigenvalues().minCoeff();
    if (lmin < 0) alpha = std::min(alpha, -1.0 / lmin);
  }
  return alpha;
}

struct KktSystem {
  Eigen::LLT<Eigen::MatrixXd> Hfac;
  Eigen::MatrixXd HinvF;                      // H^{-1} F
  Eigen::LDLT<Eigen::MatrixXd> FHFfac;        // F^T H^{-1} F
  std::vector<BlockMatrix> WAW;               // W A_i W, reused for all solves
  bool ok = false;
};

inline KktSystem build_kkt(const SdpProblem& p, const NtScaling& nt) {
  KktSystem sys;
  const int m = p.m();
  sys.WAW.reserve(m);
  for (int i = 0; i < m; ++i) sys.WAW.push_back(sandwich(nt, p.A[i]));
  Eigen::MatrixXd H(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      double v = p.A[i].dot(sys.WAW[j]);
      H(i, j) = v;
      H(j, i) = v;
    }
  // tiny ridge keeps the factorization alive near convergence
  double ridge = 1e-14 * std::max(1.0, H.diagonal().cwiseAbs().maxCoeff());
  H.diagonal().array() += ridge;
  sys.Hfac.compute(H);
  if (sys.Hfac.info() != Eigen::Success) return sys;
  if (p.free_count() > 0) {
    sys.HinvF = sys.Hfac.solve(p.F);
    Eigen::MatrixXd FHF = p.F.transpose() * sys.HinvF;
    sys.FHFfac.compute(((FHF + FHF.transpose()) / 2).eval());
    if (sys.FHFfac.info() != Eigen::Success) return sys;
  }
  sys.ok = true;
  return sys;
}

struct Direction {
  BlockMatrix dX, dS;
  Eigen::VectorXd dy, du;
};

/// Solves the Newton system
///   A(dX) + F du = rp,  A^T(dy) + dS = Rd,  F^T dy = rf,  dX + W dS W = Rc.
inline Direction solve_newton(const SdpProblem& p, const NtScaling& nt, const KktSystem& sys,
                              const Eigen::VectorXd& rp, const BlockMatrix& Rd,
                              const Eigen::VectorXd& rf, const BlockMatrix& Rc) {
  Direction d;
  BlockMatrix WRdW = sandwich(nt, Rd);
  Eigen::VectorXd r1 = rp - apply_constraints(p, Rc) + apply_constraints(p, WRdW);
  if (p.free_count() > 0) {
    Eigen::VectorXd t = sys.Hfac.solve(r1);
    d.du = sys.FHFfac.solve(p.F.transpose() * t - rf);
    d.dy = sys.Hfac.solve(r1 - p.F * d.du);
  } else {
    d.du = Eigen::VectorXd();
    d.dy = sys.Hfac.solve(r1);
  }
  d.dS = Rd - adjoint(p, d.dy);
  d.dS.symmetrize();
  d.dX = Rc - sandwich(nt, d.dS);
  d.dX.symmetrize();
  return d;
}

}  // namespace detail

/// Primal-dual path-following with NT scaling and a Mehrotra
/// predictor-corrector; dense Cholesky on the Schur complement. Deterministic
/// for identical inputs and options.
inline SdpSolution solve_presolved(const SdpProblem& p, const SolveOptions& opts) {
  using namespace detail;
  SdpSolution sol;
  const int m = p.m();
  const int n = std::max(1, p.total_dim());

  double normb = p.b.size() ? p.b.cwiseAbs().maxCoeff() : 0.0;
  double normC = p.C.max_abs();
  double normA = 1e-12;
  for (const auto& Ai : p.A) normA = std::max(normA, Ai.max_abs());

  double xi = std::max({10.0, std::sqrt(double(n)), double(n) * normb / (1 + normA)});
  double eta = std::max({10.0, std::sqrt(double(n)), normC, normA});
  BlockMatrix X = BlockMatrix::identity(p.block_sizes, xi);
  BlockMatrix S = BlockMatrix::identity(p.block_sizes, eta);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(p.free_count());

  const double init_scale = xi + eta;
  auto finish = [&](SdpStatus st, const std::string& msg) {
    sol.status = st;
    sol.message = msg;
    sol.X = X;
    sol.S = S;
    sol.y = y;
    sol.u = u;
    return sol;
  };

  // Certification helpers for divergence-based infeasibility detection.
  auto try_primal_infeasible_cert = [&]() -> bool {
    double by = p.b.dot(y);
    if (by <= 0) return false;
    Eigen::VectorXd ray = y / by;  // b.ray = 1
    BlockMatrix Z = adjoint(p, ray);
    double viol = 0;
    for (std::size_t k = 0; k < Z.block_count(); ++k) {
      if (Z.block(k).size() == 0) continue;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Z.block(k), Eigen::EigenvaluesOnly);
      viol = std::max(viol, es.eigenvalues().maxCoeff());
    }
    if (p.free_count() > 0) viol = std::max(viol, (p.F.transpose() * ray).cwiseAbs().maxCoeff());
    if (viol <= 1e-7 * (1 + ray.cwiseAbs().maxCoeff() * normA)) {
      sol.farkas_y = ray;
      return true;
    }
    return false;
  };
  auto try_dual_infeasible_cert = [&]() -> bool {
    double cx = p.C.dot(X);  // free part of a primal ray is not searched for
    if (cx >= 0) return false;
    double nx = X.norm();
    if (nx <= 0) return false;
    BlockMatrix ray = (1.0 / nx) * X;
    double feas = apply_constraints(p, ray).cwiseAbs().maxCoeff();
    if (feas <= 1e-7 * (1 + normA) && p.C.dot(ray) < -1e-9) {
      sol.primal_ray = ray;
      return true;
    }
    return false;
  };

  double err_best = std::numeric_limits<double>::infinity();
  int last_improvement = 0;
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    sol.iterations = iter;
    Eigen::VectorXd rp = p.b - apply_constraints(p, X);
    if (p.free_count() > 0) rp -= p.F * u;
    BlockMatrix Rd = p.C - S - adjoint(p, y);
    Rd.symmetrize();
    Eigen::VectorXd rf = p.free_count() > 0
                             ? Eigen::VectorXd(p.c_free - p.F.transpose() * y)
                             : Eigen::VectorXd();

    double pobj = p.C.dot(X) + (p.free_count() ? p.c_free.dot(u) : 0.0);
    double dobj = p.b.dot(y);
    double mu = X.dot(S) / n;
    double relp = (m ? rp.norm() : 0.0) / (1 + p.b.norm());
    double reld = Rd.norm() / (1 + p.C.norm());
    if (rf.size()) reld = std::max(reld, rf.norm() / (1 + p.c_free.norm()));
    double relg = std::abs(pobj - dobj) / (1 + std::abs(pobj) + std::abs(dobj));

    sol.primal_obj = pobj;
    sol.dual_obj = dobj;
    sol.primal_res = relp;
    sol.dual_res = reld;
    sol.rel_gap = relg;
    sol.mu = mu;

    if (relp <= opts.tol && reld <= opts.tol && relg <= opts.tol)
      return finish(SdpStatus::optimal, "converged");

    // tolerance requests at the edge of double precision stop once progress
    // stalls on a plateau that still meets the 1e-8 solution contract
    double err = std::max({relp, reld, relg});
    if (err < 0.5 * err_best) {
      err_best = err;
      last_improvement = iter;
    }
    if (err <= 1e-8 && iter - last_improvement >= 8)
      return finish(SdpStatus::optimal, "converged at machine precision");

    // Divergence-based classification.
    double ynorm = y.norm() + S.norm();
    double xnorm = X.norm();
    if (ynorm > 1e8 * init_scale && relg > opts.tol) {
      if (try_primal_infeasible_cert())
        return finish(SdpStatus::primal_infeasible, "certified by dual improving ray");
    }
    if (xnorm > 1e8 * init_scale) {
      if (try_dual_infeasible_cert())
        return finish(SdpStatus::dual_infeasible, "certified by primal improving ray");
    }
    if (relp <= 1e-6 && pobj < -1e10 * (1 + normb + normC))
      return finish(SdpStatus::dual_infeasible, "objective diverging to -inf");
    if (ynorm > 1e13 * init_scale || xnorm > 1e13 * init_scale)
      return finish(SdpStatus::numerical_failure, "iterates diverged without certificate");

    // breakdown with residuals already inside the 1e-8 contract is the
    // machine-precision end of the road, not a failure
    bool contract_met = err <= 1e-8;
    NtScaling nt = nt_scaling(X, S);
    if (!nt.ok)
      return finish(contract_met ? SdpStatus::optimal : SdpStatus::numerical_failure,
                    contract_met ? "converged at machine precision (scaling breakdown)"
                                 : "lost positive definiteness");
    KktSystem sys = build_kkt(p, nt);
    if (!sys.ok)
      return finish(contract_met ? SdpStatus::optimal : SdpStatus::numerical_failure,
                    contract_met ? "converged at machine precision (factorization breakdown)"
                                 : "Schur complement factorization failed");

    BlockMatrix Sinv = inverse_of(nt.Sfac, S);

    // Predictor: aim at mu' = 0.
    BlockMatrix Rc_aff = -1.0 * X;
    Direction aff = solve_newton(p, nt, sys, rp, Rd, rf, Rc_aff);
    double ap_aff = max_step(X, aff.dX);
    double ad_aff = max_step(S, aff.dS);

    BlockMatrix Xa = X + std::min(1.0, opts.step_fraction * ap_aff) * aff.dX;
    BlockMatrix Sa = S + std::min(1.0, opts.step_fraction * ad_aff) * aff.dS;
    double mu_aff = std::max(0.0, Xa.dot(Sa) / n);
    double sigma = std::pow(mu_aff / std::max(mu, 1e-300), 3.0);
    sigma = std::clamp(sigma, 1e-8, 1.0);

    // Corrector with the Mehrotra second-order term mapped through S^{-1}.
    auto centered_rhs = [&](double sig, bool second_order) {
      BlockMatrix Rc = sig * mu * Sinv - X;
      if (second_order) {
        for (std::size_t k = 0; k < Rc.block_count(); ++k) {
          Eigen::MatrixXd Ncorr = aff.dX.block(k) * aff.dS.block(k);
          Eigen::MatrixXd T = Ncorr * Sinv.block(k);
          Rc.block(k) -= (T + T.transpose()) / 2;
        }
      }
      return Rc;
    };

    Direction dir = solve_newton(p, nt, sys, rp, Rd, rf, centered_rhs(sigma, true));
    double ap = opts.step_fraction * max_step(X, dir.dX);
    double ad = opts.step_fraction * max_step(S, dir.dS);
    if (std::min(ap, ad) < 0.05 * std::min(ap_aff, ad_aff)) {
      // second-order term hurt more than it helped; fall back to centering
      sigma = std::max(sigma, 0.5);
      dir = solve_newton(p, nt, sys, rp, Rd, rf, centered_rhs(sigma, false));
      ap = opts.step_fraction * max_step(X, dir.dX);
      ad = opts.step_fraction * max_step(S, dir.dS);
    }
    ap = std::min(1.0, ap);
    ad = std::min(1.0, ad);
    if (!(ap > 0) || !(ad > 0))
      return finish(contract_met ? SdpStatus::optimal : SdpStatus::numerical_failure,
                    contract_met ? "converged at machine precision (step collapse)"
                                 : "zero step length");

    // commit with backtracking: the eigenvalue-based step bound can overshoot
    // positive definiteness by roundoff on badly conditioned iterates
    bool committed = false;
    for (int bt = 0; bt < 40 && !committed; ++bt) {
      BlockMatrix Xn = X + ap * dir.dX;
      BlockMatrix Sn = S + ad * dir.dS;
      Xn.symmetrize();
      Sn.symmetrize();
      bool pd = true;
      for (std::size_t k = 0; k < Xn.block_count() && pd; ++k) {
        Eigen::LLT<Eigen::MatrixXd> lx(Xn.block(k));
        Eigen::LLT<Eigen::MatrixXd> ls(Sn.block(k));
        pd = lx.info() == Eigen::Success && ls.info() == Eigen::Success;
      }
      if (pd) {
        X = std::move(Xn);
        S = std::move(Sn);
        y += ad * dir.dy;
        if (p.free_count() > 0) u += ap * dir.du;
        committed = true;
      } else {
        ap *= 0.7;
        ad *= 0.7;
      }
    }
    if (!committed)
      return finish(contract_met ? SdpStatus::optimal : SdpStatus::numerical_failure,
                    contract_met ? "converged at machine precision (no definite step)"
                                 : "could not keep iterates definite");
  }

  if (try_primal_infeasible_cert())
    return finish(SdpStatus::primal_infeasible, "certified at iteration limit");
  if (try_dual_infeasible_cert())
    return finish(SdpStatus::dual_infeasible, "certified at iteration limit");
  return finish(SdpStatus::max_iter, "iteration limit reached");
}

/// solve = presolve + path following. Dual multipliers of dropped (dependent)
/// constraints are reported as zero.
inline SdpSolution solve(const SdpProblem& p, const SolveOptions& opts = {}) {
  p.validate(effective_dim_cap(opts));
  PresolveResult pre = presolve(p);
  if (pre.inconsistent) {
    SdpSolution sol;
    sol.status = SdpStatus::primal_infeasible;
    sol.message = "inconsistent linear constraints";
    sol.farkas_y = pre.farkas_y;
    return sol;
  }
  SdpSolution sol = solve_presolved(pre.reduced, opts);
  sol.dropped_constraints = pre.dropped;
  // undo row scaling and re-expand over dropped rows (their multipliers are 0)
  Eigen::VectorXd yfull = Eigen::VectorXd::Zero(p.m());
  for (std::size_t i = 0; i < pre.kept.size(); ++i)
    yfull[pre.kept[i]] = sol.y[static_cast<Eigen::Index>(i)] / pre.row_scale[i];
  sol.y = yfull;
  if (sol.farkas_y.size()) {
    Eigen::VectorXd rayfull = Eigen::VectorXd::Zero(p.m());
    for (std::size_t i = 0; i < pre.kept.size(); ++i)
      rayfull[pre.kept[i]] = sol.farkas_y[static_cast<Eigen::Index>(i)] / pre.row_scale[i];
    sol.farkas_y = rayfull;
  }
  return sol;
}

struct FeasibilityResult {
  bool feasible = false;
  bool decided = false;          // false on numerical failure
  double slack = 0;              // optimal phase-I slack t*
  BlockMatrix X;                 // feasible point when feasible
  Eigen::VectorXd u;             // free part of the feasible point
  Eigen::VectorXd farkas_y;      // validated Farkas ray when infeasible
  SdpStatus inner_status = SdpStatus::numerical_failure;
  std::string message;
};

/// Phase-I feasibility for { X >= 0, u : A(X) + F u = b }: minimizes t in
///   <A_i, Y> - t tr(A_i) + F u = b,  Y >= 0, t free,
/// so X = Y - t I is feasible iff the optimal slack t* <= tol_slack. An
/// unbounded phase-I (t -> -inf) also certifies feasibility. On t* > 0 the
/// phase-I dual y is a Farkas ray: A^T(y) <= 0, F^T y = 0, b.y = t* > 0.
inline FeasibilityResult feasibility(const SdpProblem& p, const SolveOptions& opts = {},
                                     double tol_slack = 1e-8) {
  p.validate(effective_dim_cap(opts));
  PresolveResult pre = presolve(p);
  FeasibilityResult res;
  if (pre.inconsistent) {
    res.feasible = false;
    res.decided = true;
    res.slack = std::numeric_limits<double>::infinity();
    Eigen::VectorXd rayfull = Eigen::VectorXd::Zero(p.m());
    rayfull = pre.farkas_y;
    res.farkas_y = rayfull;
    res.message = "inconsistent linear constraints";
    return res;
  }
  SdpProblem q = pre.reduced;

  // Eliminate free variables up front: A(X) + F u = b is solvable in u iff
  // Z^T(b - A(X)) = 0 for Z spanning null(F^T). Free columns otherwise pin
  // boundary faces of the phase-I dual and stall the path following.
  Eigen::MatrixXd Zfree;  // m x (m - rank F)
  if (q.free_count() > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(q.F, Eigen::ComputeFullU);
    int rankF = 0;
    double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > 1e-12 * std::max(1.0, smax)) ++rankF;
    Zfree = svd.matrixU().rightCols(q.m() - rankF);
    SdpProblem qz;
    qz.block_sizes = q.block_sizes;
    qz.C = q.C;
    qz.b = Zfree.transpose() * q.b;
    qz.F = Eigen::MatrixXd::Zero(Zfree.cols(), 0);
    for (Eigen::Index c = 0; c < Zfree.cols(); ++c) {
      BlockMatrix M(q.block_sizes);
      for (int i = 0; i < q.m(); ++i) {
        if (Zfree(i, c) == 0.0) continue;
        for (std::size_t k = 0; k < M.block_count(); ++k)
          M.block(k) += Zfree(i, c) * q.A[i].block(k);
      }
      qz.A.push_back(std::move(M));
    }
    SdpProblem keep_free = std::move(q);
    q = std::move(qz);
    // recover u later against the original reduced system
    FeasibilityResult inner = feasibility(q, opts, tol_slack);
    res = inner;
    if (inner.feasible) {
      Eigen::VectorXd resid = keep_free.b - apply_constraints(keep_free, inner.X);
      res.u = keep_free.F.completeOrthogonalDecomposition().solve(resid);
    }
    if (!inner.feasible && inner.farkas_y.size()) {
      res.farkas_y = Zfree * inner.farkas_y;  // valid ray for the free-var system
    }
    // map back through the outer presolve
    if (res.farkas_y.size() == static_cast<Eigen::Index>(pre.kept.size())) {
      Eigen::VectorXd rayfull = Eigen::VectorXd::Zero(p.m());
      for (std::size_t i = 0; i < pre.kept.size(); ++i)
        rayfull[pre.kept[i]] = res.farkas_y[static_cast<Eigen::Index>(i)] / pre.row_scale[i];
      res.farkas_y = rayfull;
    }
    return res;
  }

  SdpProblem ph;
  ph.block_sizes = q.block_sizes;
  ph.C = BlockMatrix(q.block_sizes);
  ph.A = q.A;
  ph.b = q.b;
  ph.F = Eigen::MatrixXd(q.m(), 1);
  for (int i = 0; i < q.m(); ++i) {
    double tr = 0;
    for (std::size_t k = 0; k < q.A[i].block_count(); ++k) tr += q.A[i].block(k).trace();
    ph.F(i, 0) = -tr;
  }
  ph.c_free = Eigen::VectorXd::Ones(1);  // min t

  SdpSolution sol = solve_presolved(ph, opts);
  res.inner_status = sol.status;
  res.message = sol.message;

  if (sol.status == SdpStatus::optimal) {
    double t = sol.u[0];
    res.decided = true;
    res.slack = t;
    if (t <= tol_slack) {
      res.feasible = true;
      res.X = sol.X;
      for (std::size_t k = 0; k < res.X.block_count(); ++k)
        res.X.block(k) -= t * Eigen::MatrixXd::Identity(res.X.block(k).rows(),
                                                        res.X.block(k).cols());
    } else {
      // validate the Farkas ray before claiming infeasibility
      Eigen::VectorXd ray = sol.y;
      double by = q.b.dot(ray);
      if (by > 0) {
        ray /= by;
        BlockMatrix Z = adjoint(q, ray);
        double viol = 0.0;
        for (std::size_t k = 0; k < Z.block_count(); ++k) {
          if (Z.block(k).size() == 0) continue;
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Z.block(k), Eigen::EigenvaluesOnly);
          viol = std::max(viol, es.eigenvalues().maxCoeff());
        }
        if (viol <= 1e-7 * (1 + ray.cwiseAbs().maxCoeff())) {
          res.feasible = false;
          res.decided = true;
          res.farkas_y = ray;
        } else {
          res.decided = true;  // infeasible by slack, ray validation failed
          res.message = "slack positive; Farkas ray validation failed";
        }
      } else {
        res.decided = true;
        res.message = "slack positive; Farkas ray validation failed";
      }
    }
  } else if (sol.status == SdpStatus::dual_infeasible) {
    // phase-I unbounded below: arbitrarily strictly feasible points exist
    res.decided = true;
    res.feasible = true;
    res.slack = -std::numeric_limits<double>::infinity();
    double t = sol.u.size() ? sol.u[0] : 0.0;
    res.X = sol.X;
    for (std::size_t k = 0; k < res.X.block_count(); ++k)
      res.X.block(k) -= t * Eigen::MatrixXd::Identity(res.X.block(k).rows(),
                                                      res.X.block(k).cols());
  }

  if (res.farkas_y.size() && res.farkas_y.size() == static_cast<Eigen::Index>(pre.kept.size())) {
    Eigen::VectorXd rayfull = Eigen::VectorXd::Zero(p.m());
    for (std::size_t i = 0; i < pre.kept.size(); ++i)
      rayfull[pre.kept[i]] = res.farkas_y[static_cast<Eigen::Index>(i)] / pre.row_scale[i];
    res.farkas_y = rayfull;
  }
  return res;
}

}  // namespace ncert::sdp

#endif  // NCERT_SDP_SOLVER_HPP
