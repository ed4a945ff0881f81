#pragma once

#include <span>
#include <string>
#include <vector>

#include "ellgraph/words.hpp"

namespace ellgraph {

/// Elementary Nielsen transformation: x ↦ x⁻¹ or x ↦ x·y (y ≠ x), fixing the
/// other generators.
struct NielsenMove {
  enum class Kind { invert, right_multiply };

  Kind kind = Kind::invert;
  Generator target = 0;
  Generator by = 0;

  static NielsenMove invert(Generator x) { return {Kind::invert, x, x}; }
  static NielsenMove right_multiply(Generator x, Generator y);

  bool operator==(const NielsenMove&) const = default;
};

/// Acting on a basis tuple: replaces entry `target` by its inverse or by
/// entry(target)·entry(by). If the tuple lists φ(X), the result lists (φ∘ν)(X).
void apply_move(std::vector<Word>& tuple, const NielsenMove& m);

/// The tuple (ν₁∘…∘ν_m)(X) obtained by applying the moves in order to X.
std::vector<Word> apply_moves(std::span<const NielsenMove> moves, std::size_t rank);

/// Automorphism of F(X) given by the images of the generators.
class Automorphism {
 public:
  static Automorphism identity(std::size_t rank);
  /// φ = ν₁∘…∘ν_m.
  static Automorphism from_moves(std::span<const NielsenMove> moves, std::size_t rank);
  /// images[g] = φ(x_g). Throws not_a_basis if the images are not a basis.
  explicit Automorphism(std::vector<Word> images);

  std::size_t rank() const { return images_.size(); }
  std::span<const Word> images() const { return images_; }
  Word apply(const Word& w) const;
  CyclicWord apply(const CyclicWord& w) const;
  Automorphism inverse() const;
  /// (this ∘ inner)(x) = this(inner(x)).
  Automorphism compose(const Automorphism& inner) const;

  bool operator==(const Automorphism&) const = default;

 private:
  struct Unchecked {};
  Automorphism(std::vector<Word> images, Unchecked) : images_(std::move(images)) {}

  std::vector<Word> images_;
};

/// True iff the words form a basis of F(X): exactly `rank` of them and the
/// Stallings graph of the subgroup they generate is the rose on X.
bool is_basis(std::span<const Word> words, std::size_t rank);

/// Moves ν₁,…,ν_m with (ν₁∘…∘ν_m)(X) = target exactly. Short decompositions
/// come from a bounded meet-in-the-middle search; longer ones from greedy
/// Nielsen reduction of the target, inverted. Throws not_a_basis.
std::vector<NielsenMove> nielsen_decompose(std::span<const Word> target, std::size_t rank);
std::vector<NielsenMove> nielsen_decompose(std::span<const Word> target, const Alphabet& alphabet);

/// Same contract, greedy Nielsen reduction only (no search).
std::vector<NielsenMove> nielsen_reduce_decompose(std::span<const Word> target, std::size_t rank);

/// `inv <gen>` / `rmul <gen> <gen>`.
std::string format_move(const NielsenMove& m, const Alphabet& alphabet);
NielsenMove parse_move(std::string_view text, const Alphabet& alphabet);

}  // namespace ellgraph
