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

#ifndef NCERT_MINIMAL_PENCIL_HPP
#define NCERT_MINIMAL_PENCIL_HPP

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "ncert/domination.hpp"
#include "ncert/equivalence.hpp"
#include "ncert/pencil.hpp"

namespace ncert {

namespace detail_min {

/// Invariant-subspace split of a coefficient tuple: eigenspaces of a generic
/// symmetric element of the commutant are invariant under every A_j, and for
/// a generic element they realize the irreducible decomposition. Each split
/// is validated (||A_j Q - Q (Q^T A_j Q)|| small) and refined recursively
/// until no block splits further.
inline std::vector<std::vector<Eigen::MatrixXd>> split_blocks(
    const std::vector<Eigen::MatrixXd>& A, Rng& rng, int depth = 0) {
  const int d = static_cast<int>(A[0].rows());
  if (d == 1 || depth > 8) return {A};
  double scale = 1e-12;
  for (const auto& a : A) scale = std::max(scale, a.cwiseAbs().maxCoeff());

  // commutant basis of {A_j} via the same intertwiner machinery (A = B)
  std::vector<Eigen::MatrixXd> comm = detail_eq::intertwiner_space(A, A);
  if (comm.size() <= 1) return {A};  // scalar commutant: irreducible

  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(d, d);
  for (const auto& N : comm) K += gauss(rng) * N;
  K = ((K + K.transpose()) / 2).eval();  // commutant is *-closed, so K stays in it
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);

  // group eigenvalues, then validate invariance of each eigenspace
  std::vector<std::pair<int, int>> groups;  // [begin, end)
  const auto& ev = es.eigenvalues();
  double gap_tol = 1e-8 * (1 + ev.cwiseAbs().maxCoeff());
  int begin = 0;
  for (int i = 1; i <= d; ++i)
    if (i == d || ev(i) - ev(i - 1) > gap_tol) {
      groups.emplace_back(begin, i);
      begin = i;
    }
  if (groups.size() <= 1) return {A};

  std::vector<std::vector<Eigen::MatrixXd>> out;
  for (auto [b, e] : groups) {
    Eigen::MatrixXd Q = es.eigenvectors().middleCols(b, e - b);
    std::vector<Eigen::MatrixXd> blk;
    for (const auto& a : A) {
      Eigen::MatrixXd t = Q.transpose() * a * Q;
      t = ((t + t.transpose()) / 2).eval();
      if ((a * Q - Q * t).cwiseAbs().maxCoeff() > 1e-7 * (1 + scale)) return {A};
      blk.push_back(std::move(t));
    }
    auto finer = split_blocks(blk, rng, depth + 1);
    for (auto& f : finer) out.push_back(std::move(f));
  }
  return out;
}

inline LinearPencil pencil_from_blocks(const std::vector<std::vector<Eigen::MatrixXd>>& blocks,
                                       int g) {
  std::vector<RatMat> coeffs;
  int total = 0;
  for (const auto& blk : blocks) total += static_cast<int>(blk[0].rows());
  coeffs.push_back(RatMat::identity(total));
  for (int j = 0; j < g; ++j) {
    RatMat a(total, total);
    int off = 0;
    for (const auto& blk : blocks) {
      RatMat piece = RatMat::from_eigen(blk[j]).symmetrized();
      a.set_block(off, off, piece);
      off += piece.rows();
    }
    coeffs.push_back(std::move(a));
  }
  return LinearPencil(std::move(coeffs));
}

}  // namespace detail_min

/// Smallest defining subpencil reachable by the block procedure: split into
/// irreducible invariant blocks, delete unitary duplicates, then greedily
/// delete blocks whose removal keeps D unchanged (checked by the domination
/// SDP; removing a block only enlarges the set, so one direction suffices).
/// The result defines the same spectrahedron; minimality is a guarantee of
/// the procedure, not a global claim.
inline LinearPencil minimal_defining_pencil(const LinearPencil& L, unsigned seed = 0) {
  detail_dom::require_monic(L, "minimal_defining_pencil");
  RadiusResult rad = radius(L);
  if (!rad.bounded)
    throw std::invalid_argument("minimal_defining_pencil: D_L(1) is unbounded");
  const int g = L.g();

  std::vector<Eigen::MatrixXd> A;
  for (int j = 1; j <= g; ++j) A.push_back(L.A(j).to_eigen());
  Rng rng(seed ^ 0x5EEDu);
  std::vector<std::vector<Eigen::MatrixXd>> blocks = detail_min::split_blocks(A, rng);

  // drop unitary duplicates (equivalent blocks cut out identical sets)
  std::vector<bool> alive(blocks.size(), true);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (!alive[i]) continue;
    for (std::size_t j = i + 1; j < blocks.size(); ++j) {
      if (!alive[j] || blocks[i][0].rows() != blocks[j][0].rows()) continue;
      if (unitarily_equivalent_tuples(blocks[i], blocks[j]).equivalent) alive[j] = false;
    }
  }

  auto kept_blocks = [&]() {
    std::vector<std::vector<Eigen::MatrixXd>> kept;
    for (std::size_t i = 0; i < blocks.size(); ++i)
      if (alive[i]) kept.push_back(blocks[i]);
    return kept;
  };

  // greedy deletion to a fixpoint: a block goes when the remaining subpencil
  // still dominates L (the reverse inclusion holds for every subpencil)
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (!alive[i]) continue;
      alive[i] = false;
      auto kept = kept_blocks();
      bool removable = false;
      if (!kept.empty()) {
        LinearPencil cand = detail_min::pencil_from_blocks(kept, g);
        auto out = detail_dom::choi_feasible(cand, L, 1e-9);
        removable = out.decided && out.feasible;
      }
      if (removable) {
        changed = true;
      } else {
        alive[i] = true;
      }
    }
  }
  return detail_min::pencil_from_blocks(kept_blocks(), g);
}

struct SetsEqualResult {
  bool equal = false;
  bool forward = false;   // D_{L1} <= D_{L2}
  bool backward = false;  // D_{L2} <= D_{L1}
  bool minimal_equivalence = false;
  std::string via = "mutual domination";
  bool consistent = true;  // Gleichstellensatz cross-check
  std::string message;
};

/// Mutual domination, then the Gleichstellensatz cross-check: when the sets
/// agree, the minimal defining pencils must be unitarily equivalent; a
/// disagreement is reported as an internal-consistency failure rather than
/// absorbed.
inline SetsEqualResult sets_equal(const LinearPencil& L1, const LinearPencil& L2,
                                  unsigned seed = 0) {
  detail_dom::require_monic(L1, "sets_equal");
  detail_dom::require_monic(L2, "sets_equal");
  SetsEqualResult res;
  RadiusResult r1 = radius(L1), r2 = radius(L2);
  if (r1.bounded != r2.bounded) {
    res.equal = false;
    res.message = "one side is unbounded";
    return res;
  }
  if (!r1.bounded) {
    res.message = "both sides unbounded; mutual domination undecidable here";
    res.consistent = false;
    return res;
  }
  auto fwd = detail_dom::choi_feasible(L1, L2, 1e-9);
  auto bwd = detail_dom::choi_feasible(L2, L1, 1e-9);
  if (!fwd.decided || !bwd.decided) throw std::runtime_error("sets_equal: SDP solver failure");
  res.forward = fwd.feasible;
  res.backward = bwd.feasible;
  res.equal = res.forward && res.backward;
  if (!res.equal) return res;

  LinearPencil m1 = minimal_defining_pencil(L1, seed);
  LinearPencil m2 = minimal_defining_pencil(L2, seed);
  EquivalenceResult eq = unitarily_equivalent(m1, m2);
  res.minimal_equivalence = eq.equivalent;
  if (!eq.equivalent) {
    res.consistent = false;
    res.message = "internal-consistency failure: sets equal but minimal pencils inequivalent";
  }
  return res;
}

}  // namespace ncert

#endif  // NCERT_MINIMAL_PENCIL_HPP
