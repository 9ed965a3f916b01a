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

#ifndef NCERT_SAMPLING_HPP
#define NCERT_SAMPLING_HPP

#include <Eigen/Dense>

#include <random>

#include "ncert/basis.hpp"
#include "ncert/evaluate.hpp"
#include "ncert/poly.hpp"

namespace ncert {

/// Deterministic sampling helpers. Everything seeds explicitly; property
/// probes and counterexample searches run under a caller-fixed seed.
using Rng = std::mt19937_64;

inline Eigen::MatrixXd random_gaussian(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = gauss(rng);
  return m;
}

inline Eigen::MatrixXd random_symmetric(Rng& rng, int n, double scale = 1.0) {
  Eigen::MatrixXd m = random_gaussian(rng, n, n);
  return scale * ((m + m.transpose()) / 2).eval();
}

inline Eigen::MatrixXd random_orthogonal(Rng& rng, int n) {
  Eigen::MatrixXd m = random_gaussian(rng, n, n);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd Q = qr.householderQ();
  Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (R(j, j) < 0) Q.col(j) *= -1;  // fix signs for determinism
  return Q;
}

/// Random evaluation point; symmetric entries in symmetric contexts, general
/// square matrices (entries in [-scale, scale]) in free contexts.
inline MatrixTuple random_tuple(Rng& rng, const VariableContext& ctx, int n, double scale = 1.0) {
  std::uniform_real_distribution<double> unif(-scale, scale);
  MatrixTuple t;
  t.n = n;
  for (int j = 0; j < ctx.g; ++j) {
    Eigen::MatrixXd m(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m(r, c) = unif(rng);
    if (ctx.kind == VarKind::Symmetric) m = ((m + m.transpose()) / 2).eval();
    t.X.push_back(std::move(m));
  }
  return t;
}

/// Random polynomial with small integer coefficients in [-max_coeff, max_coeff].
inline NcPoly random_poly(Rng& rng, const VariableContext& ctx, int max_degree, int terms,
                          int max_coeff = 3) {
  std::vector<Word> words = word_basis(ctx, max_degree);
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  std::uniform_int_distribution<int> coeff(-max_coeff, max_coeff);
  NcPoly p(ctx);
  for (int t = 0; t < terms; ++t) p.add_term(words[pick(rng)], Rational(coeff(rng)));
  return p;
}

inline NcPoly random_symmetric_poly(Rng& rng, const VariableContext& ctx, int max_degree,
                                    int terms, int max_coeff = 3) {
  NcPoly p = random_poly(rng, ctx, max_degree, terms, max_coeff);
  return p + p.involution();
}

}  // namespace ncert

#endif  // NCERT_SAMPLING_HPP
