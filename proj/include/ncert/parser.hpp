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

#ifndef NCERT_PARSER_HPP
#define NCERT_PARSER_HPP

#include <cctype>
#include <stdexcept>
#include <string>

#include "ncert/poly.hpp"

namespace ncert {

/// Syntax error with the zero-based offset into the input string.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t pos, const std::string& what)
      : std::runtime_error("parse error at position " + std::to_string(pos) + ": " + what),
        pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Recursive-descent parser for the expression grammar:
///
///   expr    := term (('+' | '-') term)*
///   term    := signed ('*' signed)*
///   signed  := ('-' | '+')* atom
///   atom    := primary postfix*
///   postfix := '\''              (involution)
///            | '^' INTEGER       (repeated product)
///   primary := NUMBER ('/' NUMBER)? | VARIABLE | '(' expr ')'
///
/// Variables are x1..xg; for g <= 3 the aliases x, y, z name x1, x2, x3.
/// A trailing ' in a symmetric context is accepted and collapses (x' == x).
class Parser {
 public:
  Parser(std::string text, VariableContext ctx) : text_(std::move(text)), ctx_(ctx) {}

  NcPoly parse() {
    NcPoly p = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  NcPoly parse_expr() {
    NcPoly p = parse_term();
    for (;;) {
      skip_ws();
      if (accept('+')) {
        p = p + parse_term();
      } else if (accept('-')) {
        p = p - parse_term();
      } else {
        return p;
      }
    }
  }

  NcPoly parse_term() {
    NcPoly p = parse_signed();
    for (;;) {
      skip_ws();
      if (accept('*')) {
        p = p * parse_signed();
      } else {
        return p;
      }
    }
  }

  NcPoly parse_signed() {
    skip_ws();
    bool negate = false;
    while (peek() == '-' || peek() == '+') {
      if (get() == '-') negate = !negate;
      skip_ws();
    }
    NcPoly p = parse_atom();
    return negate ? -p : p;
  }

  NcPoly parse_atom() {
    NcPoly p = parse_primary();
    for (;;) {
      skip_ws();
      if (accept('\'')) {
        p = p.involution();  // in symmetric contexts involution of a single
                             // letter is the identity, so x' collapses to x
      } else if (accept('^')) {
        skip_ws();
        std::size_t at = pos_;
        long k = parse_integer();
        if (k < 1) throw ParseError(at, "exponent must be a positive integer");
        p = p.pow(static_cast<int>(k));
      } else {
        return p;
      }
    }
  }

  NcPoly parse_primary() {
    skip_ws();
    if (accept('(')) {
      NcPoly p = parse_expr();
      skip_ws();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_variable();
    fail("expected number, variable, or '('");
    return NcPoly::zero(ctx_);  // unreachable
  }

  NcPoly parse_number() {
    Rational num = parse_decimal();
    skip_ws();
    if (peek() == '/') {
      // rational literal p/q: both sides integer literals
      std::size_t save = pos_;
      ++pos_;
      skip_ws();
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        std::size_t at = pos_;
        Rational den = parse_decimal();
        if (den == 0) throw ParseError(at, "zero denominator");
        num /= den;
      } else {
        pos_ = save;  // not a rational literal; leave '/' for the caller to reject
      }
    }
    return NcPoly::constant(ctx_, num);
  }

  Rational parse_decimal() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (peek() == '.') {
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    if (pos_ == start) fail("expected a number");
    return parse_rational(text_.substr(start, pos_ - start));
  }

  long parse_integer() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == start) fail("expected an integer");
    return std::stol(text_.substr(start, pos_ - start));
  }

  NcPoly parse_variable() {
    std::size_t at = pos_;
    char c = get();
    int index = 0;
    if (c == 'x' && std::isdigit(static_cast<unsigned char>(peek()))) {
      index = static_cast<int>(parse_integer());
    } else if (c == 'x' || c == 'y' || c == 'z') {
      // bare aliases x, y, z, valid only while they are unambiguous
      if (ctx_.g > 3)
        throw ParseError(at, "aliases x, y, z require g <= 3; use x1..xg");
      index = c == 'x' ? 1 : (c == 'y' ? 2 : 3);
    } else {
      throw ParseError(at, std::string("unknown symbol '") + c + "'");
    }
    if (index < 1 || index > ctx_.g)
      throw ParseError(at, "variable index " + std::to_string(index) + " exceeds g = " +
                               std::to_string(ctx_.g));
    return NcPoly::variable(ctx_, index);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char get() { return pos_ < text_.size() ? text_[pos_++] : '\0'; }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  std::string text_;
  VariableContext ctx_;
  std::size_t pos_ = 0;
};

inline NcPoly parse_poly(const std::string& text, VariableContext ctx) {
  return Parser(text, ctx).parse();
}

}  // namespace ncert

#endif  // NCERT_PARSER_HPP
