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

#ifndef NCERT_DERIVATIVE_HPP
#define NCERT_DERIVATIVE_HPP

#include <stdexcept>
#include <vector>

#include "ncert/poly.hpp"

namespace ncert {

/// A polynomial over the doubled context (x1..xg, h1..hg); carries the split
/// point so the h grading is recoverable. Directional derivatives are
/// homogeneous of their order in the h letters.
struct BiPoly {
  NcPoly poly;
  int base_g;    // variables 1..base_g are x, base_g+1..2*base_g are h
  int h_degree;  // homogeneity degree in h

  VariableContext doubled_context() const { return poly.context(); }
};

inline VariableContext doubled_context(const VariableContext& ctx) {
  return VariableContext{2 * ctx.g, ctx.kind};
}

/// Re-reads p over the doubled context (h letters unused); convenient for
/// mixing p with its derivatives in one algebra.
inline NcPoly embed_in_doubled(const NcPoly& p) {
  NcPoly out(doubled_context(p.context()));
  for (const auto& [w, c] : p.coeffs()) out.add_term(w, c);
  return out;
}

inline int h_letter_count(const Word& w, int base_g) {
  int n = 0;
  for (Letter c : w.letters())
    if (letter_var(c) >= base_g) ++n;
  return n;
}

/// k-th directional derivative p^(k)(x)[h] = d^k/dt^k p(x+th) at t = 0,
/// computed by exact formal expansion: each word contributes all placements
/// of k h-letters into its positions, scaled by k!. Finite differences are
/// used only as a test oracle against this.
inline BiPoly directional_derivative(const NcPoly& p, int k) {
  if (k < 1) throw std::invalid_argument("directional_derivative: order must be >= 1");
  const int g = p.context().g;
  NcPoly out(doubled_context(p.context()));

  Rational kfact(1);
  for (int i = 2; i <= k; ++i) kfact *= i;

  std::vector<int> positions;
  for (const auto& [w, c] : p.coeffs()) {
    const int n = w.degree();
    if (n < k) continue;
    // enumerate k-subsets of positions
    positions.assign(k, 0);
    for (int i = 0; i < k; ++i) positions[i] = i;
    for (;;) {
      std::vector<Letter> ls = w.letters();
      for (int idx : positions) {
        int var = letter_var(ls[idx]);
        bool star = letter_star(ls[idx]);
        ls[idx] = make_letter(var + g, star);  // x_j -> h_j, x_j* -> h_j*
      }
      out.add_term(Word(std::move(ls)), c * kfact);
      // next k-subset in lexicographic order
      int i = k - 1;
      while (i >= 0 && positions[i] == n - k + i) --i;
      if (i < 0) break;
      ++positions[i];
      for (int j = i + 1; j < k; ++j) positions[j] = positions[j - 1] + 1;
    }
  }
  return BiPoly{out, g, k};
}

}  // namespace ncert

#endif  // NCERT_DERIVATIVE_HPP
