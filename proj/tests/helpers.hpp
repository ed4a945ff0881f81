#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ellgraph/ellipticity.hpp"
#include "ellgraph/error.hpp"
#include "ellgraph/nielsen.hpp"
#include "ellgraph/stallings.hpp"
#include "ellgraph/whitehead.hpp"
#include "oracles.hpp"

namespace testing {

using namespace ellgraph;

inline Word W(const std::string& s, std::size_t rank = 2) {
  return parse_word(s, Alphabet::standard(rank));
}

inline CyclicWord C(const std::string& s, std::size_t rank = 2) {
  return parse_cyclic_word(s, Alphabet::standard(rank));
}

inline std::string str(const Word& w, std::size_t rank = 2) {
  return format_word(w, Alphabet::standard(rank));
}

inline std::string str(const CyclicWord& w, std::size_t rank = 2) {
  return format_word(w, Alphabet::standard(rank));
}

inline std::vector<Word> Ws(const std::string& s, std::size_t rank = 2) {
  return parse_generators(s, Alphabet::standard(rank));
}

inline Subgroup H(const std::string& gens, std::size_t rank = 2) {
  return build_subgroup(Ws(gens, rank), rank);
}

inline FreeSplitting S(const std::string& text, std::size_t rank = 2) {
  return parse_splitting(text, Alphabet::standard(rank));
}

inline WordTuple T(const std::string& words, std::size_t rank = 2) {
  WordTuple t;
  for (const Word& w : Ws(words, rank)) {
    t.entries.emplace_back(w);
  }
  return t;
}

inline Word random_word(std::mt19937& rng, std::size_t rank, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> code(0, 2 * rank - 1);
  std::vector<Letter> ls;
  const std::size_t n = len(rng);
  while (ls.size() < n) {
    Letter l = Letter::from_code(code(rng));
    if (!ls.empty() && ls.back() == l.inverse()) {
      continue;
    }
    ls.push_back(l);
  }
  return Word(ls);
}

inline Word random_nontrivial(std::mt19937& rng, std::size_t rank, std::size_t max_len) {
  for (;;) {
    Word w = random_word(rng, rank, max_len);
    if (!w.empty()) {
      return w;
    }
  }
}

inline std::vector<Word> random_gens(std::mt19937& rng, std::size_t rank, std::size_t count,
                                     std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> k(1, count);
  std::vector<Word> gens(k(rng));
  for (Word& g : gens) {
    g = random_nontrivial(rng, rank, max_len);
  }
  return gens;
}

}  // namespace testing

namespace testing {

/// Splittings whose combined basis consists of words of length ≤ max_len,
/// one per distinct (A, B) pair of factor subgroups, in discovery order.
inline std::vector<FreeSplitting> enumerate_splittings(std::size_t rank, std::size_t max_len) {
  std::vector<Word> words;
  for (const oracle::Raw& r : oracle::reduced_words(rank, max_len)) {
    if (!r.empty()) {
      words.push_back(oracle::to_word(r));
    }
  }
  std::vector<FreeSplitting> out;
  const Alphabet al = Alphabet::standard(rank);
  std::set<std::string> seen;
  std::vector<std::size_t> idx(rank, 0);
  for (;;) {
    std::vector<Word> basis;
    bool increasing = true;
    for (std::size_t i = 0; i < rank; ++i) {
      basis.push_back(words[idx[i]]);
      increasing = increasing && (i == 0 || idx[i - 1] < idx[i]);
    }
    if (increasing && is_basis(basis, rank)) {
      // every nonempty proper subset of the basis as factor A
      for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << rank); ++mask) {
        std::vector<Word> a;
        std::vector<Word> b;
        for (std::size_t i = 0; i < rank; ++i) {
          (((mask >> i) & 1) != 0 ? a : b).push_back(basis[i]);
        }
        FreeSplitting s = verify_splitting(a, b, rank);
        std::string key = format_graph(s.factor(Factor::a).graph(), al) + "|" +
                          format_graph(s.factor(Factor::b).graph(), al);
        if (seen.insert(key).second) {
          out.push_back(std::move(s));
        }
      }
    }
    std::size_t i = 0;
    while (i < rank && ++idx[i] == words.size()) {
      idx[i++] = 0;
    }
    if (i == rank) {
      break;
    }
  }
  return out;
}

}  // namespace testing
