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

#ifndef NCERT_WORD_HPP
#define NCERT_WORD_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncert {

/// Variable regime of a context: symmetric letters satisfy x* = x, free
/// letters come in distinct pairs (x, x*).
enum class VarKind { Symmetric, Free };

struct VariableContext {
  int g = 1;
  VarKind kind = VarKind::Symmetric;

  friend bool operator==(const VariableContext&, const VariableContext&) = default;
};

inline void require_same_context(const VariableContext& a, const VariableContext& b) {
  if (!(a == b)) throw std::invalid_argument("polynomials come from different variable contexts");
}

/// A letter is encoded as 2*var + star with var zero-based, so the natural
/// integer order realizes x1 < x1* < x2 < x2* < ...
using Letter = std::uint16_t;

inline Letter make_letter(int var_zero_based, bool star) {
  return static_cast<Letter>(2 * var_zero_based + (star ? 1 : 0));
}
inline int letter_var(Letter c) { return c / 2; }
inline bool letter_star(Letter c) { return (c & 1) != 0; }

/// A word over the starred alphabet; the empty word is the algebra unit.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static Word empty() { return Word(); }
  static Word single(int var_zero_based, bool star = false) {
    return Word({make_letter(var_zero_based, star)});
  }

  int degree() const { return static_cast<int>(letters_.size()); }
  bool is_empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }

  Word concat(const Word& other) const {
    std::vector<Letter> out = letters_;
    out.insert(out.end(), other.letters_.begin(), other.letters_.end());
    return Word(std::move(out));
  }

  /// w* reverses the letter sequence; in free contexts each star also flips.
  Word involution(VarKind kind) const {
    std::vector<Letter> out(letters_.rbegin(), letters_.rend());
    if (kind == VarKind::Free)
      for (auto& c : out) c ^= 1;
    return Word(std::move(out));
  }

  /// Left rotation by k positions.
  Word rotated(int k) const {
    if (letters_.empty()) return *this;
    k %= degree();
    std::vector<Letter> out(letters_.begin() + k, letters_.end());
    out.insert(out.end(), letters_.begin(), letters_.begin() + k);
    return Word(std::move(out));
  }

  friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }

  /// Graded lexicographic order: by degree, then by letter sequence.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (a.degree() != b.degree()) return a.degree() <=> b.degree();
    return a.letters_ <=> b.letters_;
  }

 private:
  std::vector<Letter> letters_;
};

struct WordLess {
  bool operator()(const Word& a, const Word& b) const { return a < b; }
};

inline std::string format_word(const Word& w) {
  if (w.is_empty()) return "1";
  std::ostringstream os;
  const auto& ls = w.letters();
  for (std::size_t i = 0; i < ls.size();) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    if (i > 0) os << "*";
    os << "x" << (letter_var(ls[i]) + 1);
    if (letter_star(ls[i])) os << "'";
    if (j - i > 1) os << "^" << (j - i);
    i = j;
  }
  return os.str();
}

}  // namespace ncert

#endif  // NCERT_WORD_HPP
