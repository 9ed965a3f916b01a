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

#ifndef NCERT_CYCLIC_HPP
#define NCERT_CYCLIC_HPP

#include <set>
#include <vector>

#include "ncert/poly.hpp"

namespace ncert {

/// Lexicographically least rotation of w; canonical representative of the
/// cyclic class. Two words are cyclically equivalent (differ by a sum of
/// commutators, hence share traces under every matrix evaluation) exactly
/// when their canonical rotations agree.
inline Word cyclic_canonical(const Word& w) {
  Word best = w;
  for (int k = 1; k < w.degree(); ++k) {
    Word r = w.rotated(k);
    if (r < best) best = r;
  }
  return best;
}

/// All distinct rotations of w.
inline std::vector<Word> cyclic_class(const Word& w) {
  std::set<Word, WordLess> seen;
  for (int k = 0; k < std::max(1, w.degree()); ++k) seen.insert(w.rotated(k));
  return {seen.begin(), seen.end()};
}

/// Closure of the rotation class under the involution; the natural grouping
/// for trace-level Gram constraints, since tr w(X) = tr w*(X).
inline std::vector<Word> cyclic_star_class(const Word& w, VarKind kind) {
  std::set<Word, WordLess> seen;
  for (int k = 0; k < std::max(1, w.degree()); ++k) {
    Word r = w.rotated(k);
    seen.insert(r.involution(kind));
    seen.insert(std::move(r));
  }
  return {seen.begin(), seen.end()};
}

/// Canonical representative for the rotation+involution class.
inline Word cyclic_star_canonical(const Word& w, VarKind kind) {
  Word best = cyclic_canonical(w);
  Word star = cyclic_canonical(w.involution(kind));
  return star < best ? star : best;
}

/// Sums coefficients over each rotation class and places the total on the
/// canonical rotation. p and q are cyclically equivalent iff
/// cyclic_reduce(p - q) == 0; traces are invariant:
/// tr p(X) = tr cyclic_reduce(p)(X) for every tuple X.
inline NcPoly cyclic_reduce(const NcPoly& p) {
  NcPoly r(p.context());
  for (const auto& [w, c] : p.coeffs()) r.add_term(cyclic_canonical(w), c);
  return r;
}

inline bool cyclically_equivalent(const NcPoly& p, const NcPoly& q) {
  return cyclic_reduce(p - q).is_zero();
}

/// True iff p is a sum of commutators, i.e. tr p(X, X*) = 0 for all matrix
/// substitutions.
inline bool trace_zero_check(const NcPoly& p) { return cyclic_reduce(p).is_zero(); }

}  // namespace ncert

#endif  // NCERT_CYCLIC_HPP
