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

#ifndef NCERT_POLY_HPP
#define NCERT_POLY_HPP

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "ncert/rational.hpp"
#include "ncert/word.hpp"

namespace ncert {

/// Element of the free algebra R<x> (symmetric letters) or the free *-algebra
/// R<x,x*> (free letters): a finite map word -> exact rational coefficient.
/// Zero coefficients are never stored. Values are immutable in spirit: every
/// operation returns a fresh polynomial.
class NcPoly {
 public:
  using CoeffMap = std::map<Word, Rational, WordLess>;

  explicit NcPoly(VariableContext ctx) : ctx_(ctx) {
    if (ctx.g < 1) throw std::invalid_argument("NcPoly: need at least one variable");
  }

  static NcPoly zero(VariableContext ctx) { return NcPoly(ctx); }

  static NcPoly constant(VariableContext ctx, const Rational& c) {
    NcPoly p(ctx);
    p.add_term(Word::empty(), c);
    return p;
  }

  /// x_j (1-based); star requests x_j*, which collapses to x_j in symmetric
  /// contexts.
  static NcPoly variable(VariableContext ctx, int j, bool star = false) {
    if (j < 1 || j > ctx.g) throw std::invalid_argument("NcPoly::variable: index out of range");
    if (ctx.kind == VarKind::Symmetric) star = false;
    NcPoly p(ctx);
    p.add_term(Word::single(j - 1, star), Rational(1));
    return p;
  }

  static NcPoly monomial(VariableContext ctx, const Word& w, const Rational& c) {
    NcPoly p(ctx);
    p.add_term(w, c);
    return p;
  }

  const VariableContext& context() const { return ctx_; }
  const CoeffMap& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  int degree() const {  // degree of the zero polynomial is 0 by convention
    return coeffs_.empty() ? 0 : coeffs_.rbegin()->first.degree();
  }

  Rational coeff(const Word& w) const {
    auto it = coeffs_.find(w);
    return it == coeffs_.end() ? Rational(0) : it->second;
  }

  void add_term(const Word& w, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = coeffs_.emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coeffs_.erase(it);
    }
  }

  NcPoly operator-() const {
    NcPoly r(ctx_);
    for (const auto& [w, c] : coeffs_) r.coeffs_.emplace(w, -c);
    return r;
  }

  friend NcPoly operator+(const NcPoly& a, const NcPoly& b) {
    require_same_context(a.ctx_, b.ctx_);
    NcPoly r = a;
    for (const auto& [w, c] : b.coeffs_) r.add_term(w, c);
    return r;
  }

  friend NcPoly operator-(const NcPoly& a, const NcPoly& b) { return a + (-b); }

  friend NcPoly operator*(const Rational& c, const NcPoly& p) {
    NcPoly r(p.ctx_);
    if (c == 0) return r;
    for (const auto& [w, pc] : p.coeffs_) r.coeffs_.emplace(w, c * pc);
    return r;
  }

  /// Word concatenation bilinearly extended; the ring product of the free
  /// algebra.
  friend NcPoly operator*(const NcPoly& a, const NcPoly& b) {
    require_same_context(a.ctx_, b.ctx_);
    NcPoly r(a.ctx_);
    for (const auto& [wa, ca] : a.coeffs_)
      for (const auto& [wb, cb] : b.coeffs_) r.add_term(wa.concat(wb), ca * cb);
    return r;
  }

  NcPoly pow(int k) const {
    if (k < 0) throw std::invalid_argument("NcPoly::pow: negative exponent");
    NcPoly r = constant(ctx_, Rational(1));
    for (int i = 0; i < k; ++i) r = r * (*this);
    return r;
  }

  /// p* = sum p_w w*.
  NcPoly involution() const {
    NcPoly r(ctx_);
    for (const auto& [w, c] : coeffs_) r.coeffs_.emplace(w.involution(ctx_.kind), c);
    return r;
  }

  bool is_symmetric() const { return *this == involution(); }

  friend bool operator==(const NcPoly& a, const NcPoly& b) {
    return a.ctx_ == b.ctx_ && a.coeffs_ == b.coeffs_;
  }

  double max_abs_coeff() const {
    double m = 0;
    for (const auto& [w, c] : coeffs_) m = std::max(m, std::abs(to_double(c)));
    return m;
  }

  /// Deterministic textual form accepted back by the parser.
  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : coeffs_) {
      Rational a = c;
      if (first) {
        if (a < 0) {
          os << "-";
          a = -a;
        }
      } else {
        os << (a < 0 ? " - " : " + ");
        if (a < 0) a = -a;
      }
      first = false;
      if (w.is_empty()) {
        os << format_rational(a);
      } else {
        if (a != 1) os << format_rational(a) << "*";
        os << format_word(w);
      }
    }
    return os.str();
  }

 private:
  VariableContext ctx_;
  CoeffMap coeffs_;
};

}  // namespace ncert

#endif  // NCERT_POLY_HPP
