#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ellgraph {

using Generator = std::size_t;

/// One element of X ∪ X⁻¹, packed as 2·generator + (inverse ? 1 : 0).
///
/// The packed code doubles as the total order used everywhere for
/// tie-breaking: generators in alphabet order, and x before x⁻¹.
class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(Generator gen, int sign)
      : code_(2 * gen + (sign < 0 ? 1 : 0)) {}

  static constexpr Letter from_code(std::size_t code) {
    Letter l;
    l.code_ = code;
    return l;
  }

  constexpr Generator generator() const { return code_ >> 1; }
  constexpr int sign() const { return (code_ & 1) != 0 ? -1 : 1; }
  constexpr bool positive() const { return (code_ & 1) == 0; }
  constexpr Letter inverse() const { return from_code(code_ ^ 1); }
  constexpr std::size_t code() const { return code_; }

  constexpr auto operator<=>(const Letter&) const = default;

 private:
  std::size_t code_ = 0;
};

/// Ordered set of generator names. The order is the total order on X.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> symbols);

  /// a, b, c, ... for rank ≤ 26; longer alphabets get names x1, x2, ...
  static Alphabet standard(std::size_t rank);
  /// One lowercase character per generator, e.g. "abc" or "xyz".
  static Alphabet from_chars(std::string_view chars);

  std::size_t rank() const { return symbols_.size(); }
  const std::string& symbol(Generator g) const { return symbols_.at(g); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  std::optional<Generator> find(std::string_view name) const;

  /// True when every symbol is a single lowercase ASCII letter, which is
  /// what the one-character word format needs.
  bool single_char() const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> symbols_;
};

/// A freely reduced word. Construction always reduces.
class Word {
 public:
  Word() = default;
  explicit Word(std::span<const Letter> letters);
  Word(std::initializer_list<Letter> letters)
      : Word(std::span<const Letter>(letters.begin(), letters.size())) {}

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  std::span<const Letter> letters() const { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  Word inverse() const;
  /// Largest generator index used plus one, 0 for the empty word.
  std::size_t min_rank() const;

  friend Word operator*(const Word& u, const Word& v);
  bool operator==(const Word&) const = default;
  auto operator<=>(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
};

/// A cyclically reduced cyclic word, stored as its least rotation.
class CyclicWord {
 public:
  CyclicWord() = default;
  /// Reduces freely and cyclically, then canonicalizes the rotation.
  explicit CyclicWord(std::span<const Letter> letters);
  explicit CyclicWord(const Word& w) : CyclicWord(w.letters()) {}

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  std::span<const Letter> letters() const { return letters_; }
  /// The stored rotation read as an ordinary (reduced) word.
  Word as_word() const { return Word(letters_); }
  CyclicWord inverse() const;
  std::size_t min_rank() const;

  bool operator==(const CyclicWord&) const = default;
  auto operator<=>(const CyclicWord&) const = default;

 private:
  std::vector<Letter> letters_;
};

struct CyclicReduction {
  CyclicWord core;
  Word conjugator;
};

Word free_reduce(std::span<const Letter> letters);
Word concat(const Word& u, const Word& v);
Word invert(const Word& u);

/// w = conjugator · core.as_word() · conjugator⁻¹, conjugator of least length.
CyclicReduction cyclic_reduce(const Word& w);

/// Least rotation of an already cyclically reduced sequence.
std::vector<Letter> least_rotation(std::span<const Letter> letters);

/// Generators used by w with either sign, in increasing order.
std::vector<Generator> letter_support(const CyclicWord& w);
std::vector<Generator> letter_support(const Word& w);

/// Parses the one-character format: lowercase generator, uppercase inverse,
/// "1" for the empty word. The result is freely reduced.
Word parse_word(std::string_view text, const Alphabet& alphabet);
CyclicWord parse_cyclic_word(std::string_view text, const Alphabet& alphabet);

std::string format_word(const Word& w, const Alphabet& alphabet);
std::string format_word(const CyclicWord& w, const Alphabet& alphabet);

/// Throws alphabet_mismatch if some letter falls outside the alphabet.
void check_in_alphabet(std::span<const Letter> letters, std::size_t rank);

}  // namespace ellgraph

template <>
struct std::hash<ellgraph::Word> {
  std::size_t operator()(const ellgraph::Word& w) const noexcept;
};

template <>
struct std::hash<ellgraph::CyclicWord> {
  std::size_t operator()(const ellgraph::CyclicWord& w) const noexcept;
};
