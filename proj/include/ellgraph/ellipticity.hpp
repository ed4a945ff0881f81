#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ellgraph/nielsen.hpp"
#include "ellgraph/stallings.hpp"
#include "ellgraph/whitehead.hpp"

namespace ellgraph {

enum class Factor { a, b };

/// A proper free splitting F = A ∗ B given by bases of the two factors.
/// Only verify_splitting() builds one, so every instance is certified.
class FreeSplitting {
 public:
  const std::vector<Word>& basis_a() const { return basis_a_; }
  const std::vector<Word>& basis_b() const { return basis_b_; }
  const std::vector<Word>& basis(Factor f) const { return f == Factor::a ? basis_a_ : basis_b_; }
  /// basis_a followed by basis_b: a basis of F.
  std::vector<Word> basis() const;
  std::size_t rank() const { return rank_; }
  const Subgroup& factor(Factor f) const { return f == Factor::a ? a_ : b_; }

 private:
  friend FreeSplitting verify_splitting(std::vector<Word>, std::vector<Word>, std::size_t);
  FreeSplitting(std::vector<Word> a, std::vector<Word> b, std::size_t rank, Subgroup ga,
                Subgroup gb)
      : basis_a_(std::move(a)),
        basis_b_(std::move(b)),
        rank_(rank),
        a_(std::move(ga)),
        b_(std::move(gb)) {}

  std::vector<Word> basis_a_;
  std::vector<Word> basis_b_;
  std::size_t rank_;
  Subgroup a_;
  Subgroup b_;
};

/// Certifies F = A ∗ B: the union of the bases generates F (its Stallings
/// graph is the rose on X) and rank A + rank B = |X|. Throws
/// does_not_generate or rank_mismatch.
FreeSplitting verify_splitting(std::vector<Word> basis_a, std::vector<Word> basis_b,
                               std::size_t rank);

/// Which factors carry a common elliptic element, and how to see it.
struct CommonElliptic {
  Factor first = Factor::a;   // factor of the first splitting
  Factor second = Factor::a;  // factor of the second splitting
  Word element;               // nontrivial, reduced
  Word conj_first;            // conj_first·element·conj_first⁻¹ ∈ first factor
  Word conj_second;           // conj_second·element·conj_second⁻¹ ∈ second factor
};

struct EllipticityAnswer {
  bool decision = false;
  std::optional<CyclicWord> element;          // splittings query
  std::optional<CommonElliptic> certificate;  // splittings query
  std::optional<FreeSplitting> splitting;     // words query
};

/// Is there a nontrivial element elliptic to both splittings? Factor pairs are
/// tried in the order (A,C), (A,D), (B,C), (B,D).
EllipticityAnswer splittings_distance_two(const FreeSplitting& s1, const FreeSplitting& s2);
EllipticityAnswer splittings_distance_two_serial(const FreeSplitting& s1,
                                                 const FreeSplitting& s2);

/// Are v and w both elliptic to some proper free splitting?
EllipticityAnswer words_distance_two(const CyclicWord& v, const CyclicWord& w,
                                     std::size_t rank);

/// Factor of s that w is elliptic to (A tried first), by the cycle test on
/// Type(Γ(⟨w⟩)) × Type(Γ(factor)).
std::optional<Factor> elliptic_factor(const FreeSplitting& s, const CyclicWord& w);

/// A primitive element of F lying in factor1 of s1 and factor2 of s2.
/// Throws trivial_intersection.
Word primitive_in_intersection(const FreeSplitting& s1, Factor factor1, const FreeSplitting& s2,
                               Factor factor2);

struct NielsenBound {
  std::size_t bound = 0;
  /// Elementary moves taking s1's basis to s2's basis, in s1's coordinates.
  std::vector<NielsenMove> moves;
};

/// 2m for the recorded decomposition ν₁…ν_m sending s1's basis to s2's.
NielsenBound nielsen_bound(const FreeSplitting& s1, const FreeSplitting& s2);

/// `split <words...> | <words...>`
FreeSplitting parse_splitting(std::string_view text, const Alphabet& alphabet);
std::string format_splitting(const FreeSplitting& s, const Alphabet& alphabet);

}  // namespace ellgraph
