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

#ifndef NCERT_EIGOPT_HPP
#define NCERT_EIGOPT_HPP

#include <map>
#include <optional>
#include <string>

#include "ncert/evaluate.hpp"
#include "ncert/sos.hpp"

namespace ncert {

/// Truncated tracial/word Hankel matrix M(y)_{u,v} = y(u* v) of a moment map
/// y on words of degree <= 2*order, with its flatness report (numerical rank
/// at order d versus order d-1).
struct MomentMatrix {
  int order = 0;
  std::map<Word, double, WordLess> y;  // normalized: y(empty) = 1
  std::vector<Word> basis;             // words of degree <= order
  Eigen::MatrixXd M;
  bool flat = false;
  int rank_full = 0, rank_prev = 0;
  bool rank_ambiguous = false;  // singular-value gap ratio < 10 at a cut
  std::string note;
};

namespace detail_mom {

/// Numerical rank with an ambiguity flag: values below 1e-6 * smax count as
/// zero; a decision with gap ratio < 10 at the cut is marked ambiguous.
inline std::pair<int, bool> rank_with_gap(const Eigen::MatrixXd& M, double rel_tol = 1e-6) {
  if (M.size() == 0) return {0, false};
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const auto& s = svd.singularValues();
  double smax = s(0);
  if (smax <= 0) return {0, false};
  int r = 0;
  while (r < s.size() && s(r) > rel_tol * smax) ++r;
  bool ambiguous = false;
  if (r > 0 && r < s.size()) {
    double gap = s(r - 1) / std::max(s(r), 1e-300);
    ambiguous = gap < 10.0;
  }
  return {r, ambiguous};
}

}  // namespace detail_mom

/// Builds the Hankel matrix of a moment map over the degree-<= order basis
/// and evaluates flatness. Words missing from y are treated as zero.
inline MomentMatrix make_moment_matrix(const VariableContext& ctx,
                                       const std::map<Word, double, WordLess>& y, int order) {
  MomentMatrix mm;
  mm.order = order;
  mm.y = y;
  mm.basis = word_basis(ctx, order);
  const int N = static_cast<int>(mm.basis.size());
  mm.M = Eigen::MatrixXd::Zero(N, N);
  auto val = [&](const Word& w) {
    auto it = y.find(w);
    return it == y.end() ? 0.0 : it->second;
  };
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      mm.M(i, j) = val(mm.basis[i].involution(ctx.kind).concat(mm.basis[j]));
  mm.M = ((mm.M + mm.M.transpose()) / 2).eval();

  const int Nprev = order >= 1 ? static_cast<int>(word_basis(ctx, order - 1).size()) : 0;
  auto [rfull, afull] = detail_mom::rank_with_gap(mm.M);
  auto [rprev, aprev] = detail_mom::rank_with_gap(mm.M.topLeftCorner(Nprev, Nprev));
  mm.rank_full = rfull;
  mm.rank_prev = rprev;
  mm.rank_ambiguous = afull || aprev;
  mm.flat = rfull == rprev;
  return mm;
}

enum class EigOptStatus { optimal, unbounded_below, solver_failure };

struct EigOptResult {
  EigOptStatus status = EigOptStatus::solver_failure;
  double f_star = 0;
  std::optional<SosCertificate> certificate;  // for f - f_star
  std::optional<MomentMatrix> moments;        // dual optimal moment map
  std::string message;
};

/// Smallest eigenvalue f can attain over all symmetric matrix tuples:
/// f_star = sup { lambda : f - lambda is a sum of squares }, as one SDP with
/// lambda a free variable riding the empty-word constraint. The dual optimal
/// multipliers, sign-flipped and normalized, are the moment map y (the
/// Hankel side of the duality); infeasibility of the whole lambda family
/// means f is unbounded below.
inline EigOptResult eigenvalue_optimize(const NcPoly& f) {
  if (!f.is_symmetric())
    throw std::invalid_argument("eigenvalue_optimize: polynomial must be symmetric");
  EigOptResult res;
  const VariableContext ctx = f.context();
  const int d = (f.degree() + 1) / 2;

  GramProblemBuilder builder(ctx, ClassKind::Star);
  builder.add_block(word_basis(ctx, d), NcPoly::constant(ctx, Rational(1)));
  builder.add_free_poly(NcPoly::constant(ctx, Rational(1)));  // lambda * 1
  auto built = builder.build(f);
  built.problem.c_free[0] = -1.0;  // maximize lambda

  sdp::SolveOptions opts;
  opts.tol = 1e-10;
  sdp::FeasibilityResult feas = sdp::feasibility(built.problem, opts);
  if (!feas.decided) {
    res.message = feas.message;
    return res;
  }
  if (!feas.feasible) {
    res.status = EigOptStatus::unbounded_below;
    res.message = "no lambda admits a sum-of-squares shift";
    return res;
  }

  sdp::SdpSolution sol = sdp::solve(built.problem, opts);
  if (sol.status != sdp::SdpStatus::optimal) {
    res.message = sol.message;
    return res;
  }
  res.status = EigOptStatus::optimal;
  res.f_star = sol.u[0];

  // certificate for f - f_star
  Eigen::VectorXd ufix = sol.u;
  sdp::project_onto_constraints(built.problem, sol.X, ufix);
  SosCertificate cert;
  cert.basis = built.blocks_basis[0];
  cert.gram = sol.X.block(0);
  cert.factors = factors_from_gram(cert.gram, cert.basis, ctx);
  NcPoly shifted = f - NcPoly::constant(ctx, rational_from_double(res.f_star));
  cert.reconstruction_residual = (shifted - sum_of_squares(cert.factors, ctx)).max_abs_coeff();
  res.certificate = std::move(cert);

  // dual multipliers -> moment map (one value per word class)
  std::map<Word, double, WordLess> y;
  double y0 = 0;
  for (int r = 0; r < built.problem.m(); ++r)
    if (built.row_class[r].is_empty()) y0 = -sol.y[r];
  if (y0 <= 0) {
    res.message = "dual normalization failed; moments unavailable";
    return res;
  }
  for (int r = 0; r < built.problem.m(); ++r) {
    double v = -sol.y[r] / y0;
    const Word& key = built.row_class[r];
    y[key] = v;
    y[key.involution(ctx.kind)] = v;
  }
  res.moments = make_moment_matrix(ctx, y, d);
  return res;
}

struct Minimizer {
  MatrixTuple A;
  Eigen::VectorXd v;    // unit vector
  double value = 0;     // <f(A)v, v>
  double value_gap = 0; // |value - f_star| when f_star was supplied
};

enum class ExtractStatus { success, not_flat, rank_ambiguous };

struct ExtractResult {
  ExtractStatus status = ExtractStatus::rank_ambiguous;
  std::optional<Minimizer> minimizer;
  std::string message;
};

/// GNS construction on a flat moment matrix: orthonormalize the order-(d-1)
/// column space, compress the shift-by-letter operators onto it, take the
/// class of the empty word as the cyclic vector. Flatness guarantees the
/// compressions multiply consistently; without it no guess is made.
inline ExtractResult extract_minimizer(const MomentMatrix& mm, const NcPoly& f,
                                       std::optional<double> f_star = std::nullopt) {
  ExtractResult res;
  const VariableContext ctx = f.context();
  if (mm.order < 1) {
    res.status = ExtractStatus::not_flat;
    res.message = "moment matrix order too small for extraction";
    return res;
  }
  if (!mm.flat) {
    res.status = ExtractStatus::not_flat;
    res.message = "moment matrix is not flat";
    return res;
  }
  if (mm.rank_ambiguous) {
    res.status = ExtractStatus::rank_ambiguous;
    res.message = "numerical rank decision ambiguous";
    return res;
  }

  std::vector<Word> prev_basis = word_basis(ctx, mm.order - 1);
  const int N1 = static_cast<int>(prev_basis.size());
  Eigen::MatrixXd B = mm.M.topLeftCorner(N1, N1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B);
  double lmax = es.eigenvalues().maxCoeff();
  std::vector<int> keep;
  for (int i = 0; i < N1; ++i)
    if (es.eigenvalues()(i) > 1e-6 * std::max(lmax, 0.0)) keep.push_back(i);
  const int r = static_cast<int>(keep.size());
  if (r == 0) {
    res.status = ExtractStatus::rank_ambiguous;
    res.message = "zero moment matrix";
    return res;
  }
  Eigen::MatrixXd R(r, N1);  // row-space factor: B ~= R^T R
  Eigen::VectorXd lam_inv(r);
  for (int i = 0; i < r; ++i) {
    R.row(i) = std::sqrt(es.eigenvalues()(keep[i])) * es.eigenvectors().col(keep[i]).transpose();
    lam_inv(i) = 1.0 / es.eigenvalues()(keep[i]);
  }

  auto yval = [&](const Word& w) {
    auto it = mm.y.find(w);
    return it == mm.y.end() ? 0.0 : it->second;
  };

  // A_letter = Lam^{-1} R B_letter R^T Lam^{-1}, (B_letter)_{u,v} = y(u* xi v)
  std::map<Word, int, WordLess> prev_index;
  for (int i = 0; i < N1; ++i) prev_index.emplace(prev_basis[i], i);
  MatrixTuple A;
  A.n = r;
  for (int j = 0; j < ctx.g; ++j) {
    Word xi = Word::single(j, false);
    Eigen::MatrixXd Bj(N1, N1);
    for (int ui = 0; ui < N1; ++ui) {
      Word us = prev_basis[ui].involution(ctx.kind);
      for (int vi = 0; vi < N1; ++vi) Bj(ui, vi) = yval(us.concat(xi).concat(prev_basis[vi]));
    }
    Eigen::MatrixXd Aj =
        lam_inv.asDiagonal() * (R * Bj * R.transpose()) * lam_inv.asDiagonal();
    if (ctx.kind == VarKind::Symmetric) {
      double asym = (Aj - Aj.transpose()).cwiseAbs().maxCoeff();
      if (asym > 1e-6) {
        res.status = ExtractStatus::rank_ambiguous;
        res.message = "compressed operator not symmetric";
        return res;
      }
      Aj = ((Aj + Aj.transpose()) / 2).eval();
    }
    A.X.push_back(std::move(Aj));
  }

  Eigen::VectorXd v = R.col(0);  // class of the empty word
  double nv = v.norm();
  if (nv == 0) {
    res.status = ExtractStatus::rank_ambiguous;
    res.message = "empty-word vector vanished";
    return res;
  }
  v /= nv;

  Minimizer min;
  min.v = v;
  min.value = (v.transpose() * evaluate(f, A) * v)(0, 0);
  min.A = std::move(A);
  if (f_star) {
    min.value_gap = std::abs(min.value - *f_star);
    if (min.value_gap > 1e-5) {
      res.status = ExtractStatus::rank_ambiguous;
      res.message = "extracted value disagrees with f_star beyond 1e-5";
      return res;
    }
  }
  res.status = ExtractStatus::success;
  res.minimizer = std::move(min);
  return res;
}

}  // namespace ncert

#endif  // NCERT_EIGOPT_HPP
