#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ellgraph/words.hpp"

namespace ellgraph {

/// What a multiplier automorphism with multiplier a does to a generator x.
enum class Action : std::uint8_t {
  keep,   // x
  right,  // x·a
  left,   // a⁻¹·x
  conj,   // a⁻¹·x·a
};

/// Whitehead automorphism: either a signed permutation of X (relabeling) or a
/// multiplier automorphism sending each x to x, xa, a⁻¹x or a⁻¹xa.
class WhiteheadAut {
 public:
  /// images[g] is the letter generator g is sent to.
  static WhiteheadAut relabeling(std::vector<Letter> images);
  /// actions[g] for every generator; actions[multiplier.generator()] must be keep.
  static WhiteheadAut multiplier(Letter multiplier, std::vector<Action> actions);

  bool is_relabeling() const { return relabeling_; }
  std::size_t rank() const { return relabeling_ ? images_.size() : actions_.size(); }
  Letter multiplier_letter() const { return multiplier_; }
  std::span<const Action> actions() const { return actions_; }
  std::span<const Letter> images() const { return images_; }

  /// Image of a single letter as a reduced word.
  Word image(Letter l) const;
  Word apply(const Word& w) const;
  CyclicWord apply(const CyclicWord& w) const;
  WhiteheadAut inverse() const;

  bool operator==(const WhiteheadAut&) const = default;

 private:
  WhiteheadAut() = default;

  bool relabeling_ = false;
  Letter multiplier_;
  std::vector<Action> actions_;
  std::vector<Letter> images_;
};

/// Ordered tuple of cyclic words acted on diagonally.
struct WordTuple {
  std::vector<CyclicWord> entries;

  std::size_t total_length() const;
  bool operator==(const WordTuple&) const = default;
  auto operator<=>(const WordTuple&) const = default;
};

WordTuple apply(const WhiteheadAut& t, const WordTuple& ws);
CyclicWord apply_whitehead(const WhiteheadAut& t, const CyclicWord& w);

/// All non-identity multiplier automorphisms: multipliers in letter order,
/// then action tables in base-4 counting order (first non-multiplier
/// generator is the least significant digit; keep=0 right=1 left=2 conj=3).
std::vector<WhiteheadAut> enumerate_whitehead(std::size_t rank);
std::vector<WhiteheadAut> enumerate_whitehead(const Alphabet& alphabet);
/// All rank!·2^rank signed permutations, identity first.
std::vector<WhiteheadAut> enumerate_relabelings(std::size_t rank);

struct Minimization {
  WordTuple minimal;
  /// Automorphisms in the order applied: minimal = descent.back()(...(descent[0](input))).
  std::vector<WhiteheadAut> descent;
};

/// First-improvement descent over enumerate_whitehead until no automorphism
/// strictly shortens the tuple.
Minimization minimize_tuple(const WordTuple& ws, std::size_t rank);

/// Closure of a minimal tuple under every length-preserving Whitehead
/// automorphism, in breadth-first discovery order.
std::vector<WordTuple> equal_length_orbit(const WordTuple& minimal, std::size_t rank);

bool same_orbit(const WordTuple& u, const WordTuple& v, std::size_t rank);

bool is_primitive(const Word& w, std::size_t rank);

enum class PairClass { frugal, disjoint, both, neither };

PairClass classify_pair(const CyclicWord& v, const CyclicWord& w, std::size_t rank);
inline bool is_good(PairClass c) { return c != PairClass::neither; }
const char* to_string(PairClass c);

/// `perm a->b b->A` or `mult <letter> <gen>:<action> ...` (multiplier's own
/// generator omitted).
std::string format_whitehead(const WhiteheadAut& t, const Alphabet& alphabet);
WhiteheadAut parse_whitehead(std::string_view text, const Alphabet& alphabet);

}  // namespace ellgraph

template <>
struct std::hash<ellgraph::WordTuple> {
  std::size_t operator()(const ellgraph::WordTuple& t) const noexcept;
};
