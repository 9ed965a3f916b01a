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

#ifndef NCERT_GRAM_HPP
#define NCERT_GRAM_HPP

#include <map>
#include <vector>

#include "ncert/basis.hpp"
#include "ncert/cyclic.hpp"
#include "ncert/poly.hpp"
#include "ncert/sdp/problem.hpp"

namespace ncert {

/// Constraint grouping for Gram-matrix programs. Star groups words with
/// their involutions (coefficient-level identities, p = <W>* G <W>);
/// CyclicStar additionally closes under rotations (trace-level identities,
/// p ~ <W>* G <W> modulo commutators).
enum class ClassKind { Star, CyclicStar };

/// Assembles feasibility programs of the shape
///
///   p = sum_k <W_k>* G_k-sandwich <W_k>  + sum_j u_j * t_j,   G_k >= 0,
///
/// where block k carries a word basis W_k and a symmetric multiplier m_k
/// (the G_k-sandwich term is sum_{a,b} (G_k)_{ab} a* m_k b), and each free
/// variable u_j carries a fixed polynomial t_j. One linear constraint per
/// word class; right-hand sides come from the target polynomial. Classes
/// present in the target but unreachable by any block become 0 = p_w rows,
/// which the solver presolve reports as exact infeasibility.
class GramProblemBuilder {
 public:
  GramProblemBuilder(VariableContext ctx, ClassKind kind) : ctx_(ctx), kind_(kind) {}

  int add_block(std::vector<Word> basis, NcPoly multiplier) {
    require_same_context(ctx_, multiplier.context());
    blocks_.push_back({std::move(basis), std::move(multiplier)});
    return static_cast<int>(blocks_.size()) - 1;
  }

  int add_free_poly(NcPoly t) {
    require_same_context(ctx_, t.context());
    free_polys_.push_back(std::move(t));
    return static_cast<int>(free_polys_.size()) - 1;
  }

  struct Built {
    sdp::SdpProblem problem;
    std::vector<Word> row_class;             // constraint row -> canonical class word
    std::map<Word, int, WordLess> row_of;    // canonical class word -> row
    std::vector<std::vector<Word>> blocks_basis;
  };

  Built build(const NcPoly& target) {
    require_same_context(ctx_, target.context());
    Built out;

    auto canon = [&](const Word& w) {
      return kind_ == ClassKind::Star ? std::min(w, w.involution(ctx_.kind))
                                      : cyclic_star_canonical(w, ctx_.kind);
    };
    auto class_members = [&](const Word& w) {
      if (kind_ == ClassKind::Star) {
        std::vector<Word> ws{w};
        Word s = w.involution(ctx_.kind);
        if (!(s == w)) ws.push_back(s);
        return ws;
      }
      return cyclic_star_class(w, ctx_.kind);
    };

    // first pass: the set of word classes
    auto touch = [&](const Word& w) {
      Word key = canon(w);
      if (!out.row_of.count(key)) {
        out.row_of.emplace(key, static_cast<int>(out.row_class.size()));
        out.row_class.push_back(key);
      }
    };
    for (const auto& blk : blocks_)
      for (const Word& a : blk.basis) {
        Word astar = a.involution(ctx_.kind);
        for (const auto& [v, c] : blk.multiplier.coeffs())
          for (const Word& b : blk.basis) touch(astar.concat(v).concat(b));
      }
    for (const auto& t : free_polys_)
      for (const auto& [w, c] : t.coeffs()) touch(w);
    for (const auto& [w, c] : target.coeffs()) touch(w);

    const int rows = static_cast<int>(out.row_class.size());
    std::vector<int> sizes;
    for (const auto& blk : blocks_) sizes.push_back(static_cast<int>(blk.basis.size()));
    out.problem.init_shapes(sizes, rows, static_cast<int>(free_polys_.size()));

    // second pass: matrix entries and free columns
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      const auto& blk = blocks_[k];
      const int nb = static_cast<int>(blk.basis.size());
      for (int ai = 0; ai < nb; ++ai) {
        Word astar = blk.basis[ai].involution(ctx_.kind);
        for (const auto& [v, c] : blk.multiplier.coeffs()) {
          Word av = astar.concat(v);
          for (int bi = 0; bi < nb; ++bi) {
            int row = out.row_of.at(canon(av.concat(blk.basis[bi])));
            out.problem.A[row].block(k)(ai, bi) += to_double(c);
          }
        }
      }
    }
    for (std::size_t j = 0; j < free_polys_.size(); ++j)
      for (const auto& [w, c] : free_polys_[j].coeffs())
        out.problem.F(out.row_of.at(canon(w)), static_cast<Eigen::Index>(j)) += to_double(c);

    // symmetrize constraint matrices (exactly symmetric already for
    // symmetric multipliers; this clears roundoff) and fill right-hand sides
    for (int r = 0; r < rows; ++r) {
      for (std::size_t k = 0; k < blocks_.size(); ++k) {
        auto& M = out.problem.A[r].block(k);
        M = ((M + M.transpose()) / 2).eval();
      }
      Rational rhs(0);
      for (const Word& w : class_members(out.row_class[r])) rhs += target.coeff(w);
      out.problem.b[r] = to_double(rhs);
    }

    for (const auto& blk : blocks_) out.blocks_basis.push_back(blk.basis);
    return out;
  }

 private:
  struct Block {
    std::vector<Word> basis;
    NcPoly multiplier;
  };
  VariableContext ctx_;
  ClassKind kind_;
  std::vector<Block> blocks_;
  std::vector<NcPoly> free_polys_;
};

/// Reads sum-of-squares factors out of a PSD Gram matrix: eigenvalues below
/// 1e-12 * max (or negative) are dropped, each kept pair contributes
/// sqrt(lambda) u . W as one factor. Coefficients become exact rationals of
/// their doubles so residual checks can run exactly.
inline std::vector<NcPoly> factors_from_gram(const Eigen::MatrixXd& G,
                                             const std::vector<Word>& basis,
                                             const VariableContext& ctx) {
  std::vector<NcPoly> out;
  if (G.size() == 0) return out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(((G + G.transpose()) / 2).eval());
  double lmax = std::max(0.0, es.eigenvalues().maxCoeff());
  for (Eigen::Index k = es.eigenvalues().size() - 1; k >= 0; --k) {
    double lam = es.eigenvalues()(k);
    if (lam <= 1e-12 * lmax) break;
    double s = std::sqrt(lam);
    NcPoly h(ctx);
    for (std::size_t i = 0; i < basis.size(); ++i)
      h.add_term(basis[i], rational_from_double(s * es.eigenvectors()(static_cast<Eigen::Index>(i), k)));
    out.push_back(std::move(h));
  }
  return out;
}

inline NcPoly sum_of_squares(const std::vector<NcPoly>& factors, const VariableContext& ctx) {
  NcPoly s(ctx);
  for (const auto& h : factors) s = s + h.involution() * h;
  return s;
}

}  // namespace ncert

#endif  // NCERT_GRAM_HPP
