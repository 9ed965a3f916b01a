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

#ifndef NCERT_SOS_HPP
#define NCERT_SOS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncert/gram.hpp"
#include "ncert/sdp/solver.hpp"

namespace ncert {

/// Word basis W, PSD Gram G with p = <W>* G <W>, and the factors h_j of
/// p = sum h_j* h_j read from a factorization of G.
struct SosCertificate {
  std::vector<Word> basis;
  Eigen::MatrixXd gram;
  std::vector<NcPoly> factors;
  double reconstruction_residual = 0;  // max |coefficient| of p - sum h*h, exact arithmetic
};

enum class SosStatus { success, infeasible, odd_degree, solver_failure };

struct SosResult {
  SosStatus status = SosStatus::solver_failure;
  std::optional<SosCertificate> certificate;
  /// On infeasible: separating functional keyed by word class (the Farkas
  /// dual of the Gram system; it is nonnegative on squares and negative on p).
  std::map<Word, double, WordLess> dual_functional;
  std::string message;
};

namespace detail_sos {

inline SosResult run_gram_feasibility(const NcPoly& p, std::vector<Word> basis, ClassKind kind,
                                      double residual_gate = 1e-7) {
  SosResult res;
  GramProblemBuilder builder(p.context(), kind);
  builder.add_block(basis, NcPoly::constant(p.context(), Rational(1)));
  auto built = builder.build(p);

  sdp::SolveOptions opts;
  opts.tol = 1e-10;
  sdp::FeasibilityResult feas = sdp::feasibility(built.problem, opts);
  if (!feas.decided) {
    res.message = feas.message;
    return res;
  }
  if (!feas.feasible) {
    res.status = SosStatus::infeasible;
    if (feas.farkas_y.size())
      for (int r = 0; r < built.problem.m(); ++r)
        res.dual_functional[built.row_class[r]] = feas.farkas_y[r];
    res.message = "no Gram representation at this basis";
    return res;
  }

  Eigen::VectorXd u;
  sdp::project_onto_constraints(built.problem, feas.X, u);

  SosCertificate cert;
  cert.basis = built.blocks_basis[0];
  cert.gram = feas.X.block(0);
  cert.factors = factors_from_gram(cert.gram, cert.basis, p.context());
  NcPoly err = p - sum_of_squares(cert.factors, p.context());
  if (kind == ClassKind::CyclicStar) err = cyclic_reduce(err);
  cert.reconstruction_residual = err.max_abs_coeff();
  if (cert.reconstruction_residual > residual_gate) {
    res.message = "reconstruction residual exceeded the gate";
    return res;
  }
  res.status = SosStatus::success;
  res.certificate = std::move(cert);
  return res;
}

}  // namespace detail_sos

/// Sum-of-hermitian-squares decomposition via the Gram matrix method:
/// p in S R<x>_{2d} is a sum of squares iff p = <W_d>* G <W_d> for a PSD G.
/// Optionally restricted to a caller-chosen basis (the Hessian check uses
/// h-homogeneous bases). Odd degree is immediately infeasible.
inline SosResult sos_decompose(const NcPoly& p,
                               std::optional<std::vector<Word>> custom_basis = std::nullopt) {
  if (!p.is_symmetric()) throw std::invalid_argument("sos_decompose: polynomial must be symmetric");
  SosResult res;
  if (p.is_zero()) {
    res.status = SosStatus::success;
    res.certificate = SosCertificate{{}, Eigen::MatrixXd(), {}, 0.0};
    return res;
  }
  if (!custom_basis && p.degree() % 2 != 0) {
    res.status = SosStatus::odd_degree;
    res.message = "odd degree";
    return res;
  }
  std::vector<Word> basis =
      custom_basis ? *custom_basis : word_basis(p.context(), p.degree() / 2);
  return detail_sos::run_gram_feasibility(p, std::move(basis), ClassKind::Star);
}

/// Sum of squares up to cyclic equivalence (sufficient for trace
/// positivity): Gram constraints are grouped by rotation+involution classes,
/// and success means cyclic_reduce(p - sum h*h) = 0 up to the residual gate.
inline SosResult cyclic_sos_decompose(const NcPoly& p) {
  if (!p.is_symmetric())
    throw std::invalid_argument("cyclic_sos_decompose: polynomial must be symmetric");
  SosResult res;
  if (cyclic_reduce(p).is_zero()) {
    res.status = SosStatus::success;
    res.certificate = SosCertificate{{}, Eigen::MatrixXd(), {}, 0.0};
    return res;
  }
  if (p.degree() % 2 != 0) {
    res.status = SosStatus::odd_degree;
    res.message = "odd degree";
    return res;
  }
  return detail_sos::run_gram_feasibility(p, word_basis(p.context(), p.degree() / 2),
                                          ClassKind::CyclicStar);
}

}  // namespace ncert

#endif  // NCERT_SOS_HPP
