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

#ifndef NCERT_BASIS_HPP
#define NCERT_BASIS_HPP

#include <functional>
#include <stdexcept>
#include <vector>

#include "ncert/word.hpp"

namespace ncert {

/// The alphabet of a context in increasing letter order: x1 < x1* < x2 < ...
/// (stars only in free contexts).
inline std::vector<Letter> alphabet(const VariableContext& ctx) {
  std::vector<Letter> out;
  for (int j = 0; j < ctx.g; ++j) {
    out.push_back(make_letter(j, false));
    if (ctx.kind == VarKind::Free) out.push_back(make_letter(j, true));
  }
  return out;
}

/// All words of degree <= d in graded lexicographic order. The length is
/// sum_{j=0}^{d} G^j with G = g for symmetric and 2g for free contexts.
inline std::vector<Word> word_basis(const VariableContext& ctx, int d) {
  if (d < 0) throw std::invalid_argument("word_basis: negative degree");
  std::vector<Letter> alpha = alphabet(ctx);
  std::vector<Word> out{Word::empty()};
  std::vector<Word> level{Word::empty()};
  for (int len = 1; len <= d; ++len) {
    std::vector<Word> next;
    next.reserve(level.size() * alpha.size());
    for (const Word& w : level)
      for (Letter c : alpha) {
        std::vector<Letter> ls = w.letters();
        ls.push_back(c);
        next.emplace_back(std::move(ls));
      }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

/// Words of degree <= d containing exactly h_count letters from the h block
/// of a doubled (x1..xg, h1..hg) context; used by the Hessian and higher
/// derivative sum-of-squares bases, where factors are homogeneous in h.
inline std::vector<Word> word_basis_with_h_count(const VariableContext& doubled_ctx, int base_g,
                                                 int d, int h_count) {
  std::vector<Word> all = word_basis(doubled_ctx, d);
  std::vector<Word> out;
  for (const Word& w : all) {
    int h = 0;
    for (Letter c : w.letters())
      if (letter_var(c) >= base_g) ++h;
    if (h == h_count) out.push_back(w);
  }
  return out;
}

}  // namespace ncert

#endif  // NCERT_BASIS_HPP
