#include "ellgraph/whitehead.hpp"

#include <algorithm>
#include <cctype>
#include <iostream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "ellgraph/error.hpp"
#include "ellgraph/kernels.hpp"

namespace ellgraph {

namespace {

constexpr std::size_t kWarnRank = 5;

void warn_rank(std::size_t rank) {
  static std::once_flag once;
  if (rank > kWarnRank) {
    std::call_once(once, [rank] {
      std::cerr << "warning: Whitehead enumeration at rank " << rank
                << " visits 2n*4^(n-1) automorphisms per step\n";
    });
  }
}

const std::vector<WhiteheadAut>& cached_multipliers(std::size_t rank) {
  static std::mutex mutex;
  static std::map<std::size_t, std::vector<WhiteheadAut>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(rank);
  if (it == cache.end()) {
    it = cache.emplace(rank, enumerate_whitehead(rank)).first;
  }
  return it->second;
}

const std::vector<WhiteheadAut>& cached_all(std::size_t rank) {
  static std::mutex mutex;
  static std::map<std::size_t, std::vector<WhiteheadAut>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(rank);
  if (it == cache.end()) {
    std::vector<WhiteheadAut> all = enumerate_whitehead(rank);
    std::vector<WhiteheadAut> perms = enumerate_relabelings(rank);
    all.insert(all.end(), perms.begin(), perms.end());
    it = cache.emplace(rank, std::move(all)).first;
  }
  return it->second;
}

void check_tuple(const WordTuple& ws, std::size_t rank) {
  for (const CyclicWord& w : ws.entries) {
    check_in_alphabet(w.letters(), rank);
  }
}

const char* action_name(Action a) {
  switch (a) {
    case Action::keep: return "keep";
    case Action::right: return "right";
    case Action::left: return "left";
    case Action::conj: return "conj";
  }
  return "keep";
}

}  // namespace

// --- WhiteheadAut -----------------------------------------------------------

WhiteheadAut WhiteheadAut::relabeling(std::vector<Letter> images) {
  std::vector<bool> hit(images.size(), false);
  for (Letter l : images) {
    if (l.generator() >= images.size() || hit[l.generator()]) {
      throw Error(ErrorKind::invalid_argument, "relabeling is not a signed permutation");
    }
    hit[l.generator()] = true;
  }
  WhiteheadAut t;
  t.relabeling_ = true;
  t.images_ = std::move(images);
  return t;
}

WhiteheadAut WhiteheadAut::multiplier(Letter multiplier, std::vector<Action> actions) {
  if (multiplier.generator() >= actions.size()) {
    throw Error(ErrorKind::alphabet_mismatch, "multiplier outside the alphabet");
  }
  if (actions[multiplier.generator()] != Action::keep) {
    throw Error(ErrorKind::invalid_argument, "the multiplier's own generator must be kept");
  }
  WhiteheadAut t;
  t.multiplier_ = multiplier;
  t.actions_ = std::move(actions);
  return t;
}

Word WhiteheadAut::image(Letter l) const {
  const Generator g = l.generator();
  Word positive;
  if (relabeling_) {
    positive = Word{images_[g]};
  } else if (g == multiplier_.generator()) {
    positive = Word{Letter(g, 1)};
  } else {
    const Letter x(g, 1);
    const Letter a = multiplier_;
    switch (actions_[g]) {
      case Action::keep: positive = Word{x}; break;
      case Action::right: positive = Word{x, a}; break;
      case Action::left: positive = Word{a.inverse(), x}; break;
      case Action::conj: positive = Word{a.inverse(), x, a}; break;
    }
  }
  return l.positive() ? positive : positive.inverse();
}

namespace {

std::vector<Letter> substitute(const WhiteheadAut& t, std::span<const Letter> letters) {
  check_in_alphabet(letters, t.rank());
  std::vector<Letter> out;
  out.reserve(letters.size() * 3);
  for (Letter l : letters) {
    Word img = t.image(l);
    out.insert(out.end(), img.letters().begin(), img.letters().end());
  }
  return out;
}

}  // namespace

Word WhiteheadAut::apply(const Word& w) const { return Word(substitute(*this, w.letters())); }

CyclicWord WhiteheadAut::apply(const CyclicWord& w) const {
  return CyclicWord(substitute(*this, w.letters()));
}

WhiteheadAut WhiteheadAut::inverse() const {
  if (relabeling_) {
    std::vector<Letter> inv(images_.size());
    for (Generator g = 0; g < images_.size(); ++g) {
      inv[images_[g].generator()] = Letter(g, images_[g].sign());
    }
    return relabeling(std::move(inv));
  }
  // x ↦ x·a is undone by x ↦ x·a⁻¹, and likewise for the other actions.
  return multiplier(multiplier_.inverse(), actions_);
}

// --- Tuples -----------------------------------------------------------------

std::size_t WordTuple::total_length() const {
  std::size_t n = 0;
  for (const CyclicWord& w : entries) {
    n += w.size();
  }
  return n;
}

WordTuple apply(const WhiteheadAut& t, const WordTuple& ws) {
  WordTuple out;
  out.entries.reserve(ws.entries.size());
  for (const CyclicWord& w : ws.entries) {
    out.entries.push_back(t.apply(w));
  }
  return out;
}

CyclicWord apply_whitehead(const WhiteheadAut& t, const CyclicWord& w) { return t.apply(w); }

// --- Enumeration ------------------------------------------------------------

std::vector<WhiteheadAut> enumerate_whitehead(std::size_t rank) {
  std::vector<WhiteheadAut> out;
  if (rank < 2) {
    return out;
  }
  std::size_t tables = 1;
  for (std::size_t i = 1; i < rank; ++i) {
    tables *= 4;
  }
  for (std::size_t code = 0; code < 2 * rank; ++code) {
    const Letter a = Letter::from_code(code);
    std::vector<Generator> others;
    for (Generator g = 0; g < rank; ++g) {
      if (g != a.generator()) {
        others.push_back(g);
      }
    }
    for (std::size_t k = 1; k < tables; ++k) {
      std::vector<Action> actions(rank, Action::keep);
      std::size_t digits = k;
      for (Generator g : others) {
        actions[g] = static_cast<Action>(digits % 4);
        digits /= 4;
      }
      out.push_back(WhiteheadAut::multiplier(a, std::move(actions)));
    }
  }
  return out;
}

std::vector<WhiteheadAut> enumerate_whitehead(const Alphabet& alphabet) {
  return enumerate_whitehead(alphabet.rank());
}

std::vector<WhiteheadAut> enumerate_relabelings(std::size_t rank) {
  std::vector<WhiteheadAut> out;
  std::vector<Generator> perm(rank);
  std::iota(perm.begin(), perm.end(), Generator{0});
  do {
    for (std::size_t mask = 0; mask < (std::size_t{1} << rank); ++mask) {
      std::vector<Letter> images;
      images.reserve(rank);
      for (Generator g = 0; g < rank; ++g) {
        images.emplace_back(perm[g], ((mask >> g) & 1) != 0 ? -1 : 1);
      }
      out.push_back(WhiteheadAut::relabeling(std::move(images)));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// --- Whitehead's algorithm --------------------------------------------------

Minimization minimize_tuple(const WordTuple& ws, std::size_t rank) {
  check_tuple(ws, rank);
  warn_rank(rank);
  const auto& auts = cached_multipliers(rank);
  Minimization m;
  m.minimal = ws;
  while (auto i = parallel::first_length_decrease(auts, m.minimal)) {
    m.minimal = apply(auts[*i], m.minimal);
    m.descent.push_back(auts[*i]);
  }
  return m;
}

std::vector<WordTuple> equal_length_orbit(const WordTuple& minimal, std::size_t rank) {
  check_tuple(minimal, rank);
  warn_rank(rank);
  return parallel::equal_length_closure(minimal, cached_all(rank));
}

bool same_orbit(const WordTuple& u, const WordTuple& v, std::size_t rank) {
  if (u.entries.size() != v.entries.size()) {
    throw Error(ErrorKind::invalid_argument, "tuples of different lengths");
  }
  WordTuple mu = minimize_tuple(u, rank).minimal;
  WordTuple mv = minimize_tuple(v, rank).minimal;
  if (mu.total_length() != mv.total_length()) {
    return false;
  }
  auto orbit = equal_length_orbit(mu, rank);
  return std::find(orbit.begin(), orbit.end(), mv) != orbit.end();
}

bool is_primitive(const Word& w, std::size_t rank) {
  if (w.empty()) {
    throw Error(ErrorKind::trivial_word, "primitivity of the trivial word");
  }
  WordTuple t{{cyclic_reduce(w).core}};
  return minimize_tuple(t, rank).minimal.total_length() == 1;
}

PairClass classify_pair(const CyclicWord& v, const CyclicWord& w, std::size_t rank) {
  check_in_alphabet(v.letters(), rank);
  check_in_alphabet(w.letters(), rank);
  auto lv = letter_support(v);
  auto lw = letter_support(w);
  std::vector<Generator> both;
  std::set_union(lv.begin(), lv.end(), lw.begin(), lw.end(), std::back_inserter(both));
  std::vector<Generator> common;
  std::set_intersection(lv.begin(), lv.end(), lw.begin(), lw.end(), std::back_inserter(common));
  const bool frugal = both.size() < rank;
  const bool disjoint = common.empty();
  if (frugal && disjoint) {
    return PairClass::both;
  }
  if (frugal) {
    return PairClass::frugal;
  }
  return disjoint ? PairClass::disjoint : PairClass::neither;
}

const char* to_string(PairClass c) {
  switch (c) {
    case PairClass::frugal: return "frugal";
    case PairClass::disjoint: return "disjoint";
    case PairClass::both: return "both";
    case PairClass::neither: return "neither";
  }
  return "neither";
}

// --- Text format ------------------------------------------------------------

std::string format_whitehead(const WhiteheadAut& t, const Alphabet& alphabet) {
  std::ostringstream out;
  if (t.is_relabeling()) {
    out << "perm";
    for (Generator g = 0; g < t.rank(); ++g) {
      out << ' ' << alphabet.symbol(g) << "->" << format_word(Word{t.images()[g]}, alphabet);
    }
    return out.str();
  }
  out << "mult " << format_word(Word{t.multiplier_letter()}, alphabet);
  for (Generator g = 0; g < t.rank(); ++g) {
    if (g != t.multiplier_letter().generator()) {
      out << ' ' << alphabet.symbol(g) << ':' << action_name(t.actions()[g]);
    }
  }
  return out.str();
}

WhiteheadAut parse_whitehead(std::string_view text, const Alphabet& alphabet) {
  std::istringstream in{std::string(text)};
  std::string kind;
  in >> kind;
  auto single_letter = [&](const std::string& token) {
    Word w = parse_word(token, alphabet);
    if (w.size() != 1 || token.size() != 1) {
      throw Error(ErrorKind::parse, "expected a single letter, got \"" + token + "\"");
    }
    return w[0];
  };
  std::string token;
  if (kind == "perm") {
    std::vector<std::optional<Letter>> images(alphabet.rank());
    while (in >> token) {
      auto arrow = token.find("->");
      if (arrow == std::string::npos) {
        throw Error(ErrorKind::parse, "expected <gen>-><letter>, got \"" + token + "\"");
      }
      Letter from = single_letter(token.substr(0, arrow));
      if (!from.positive() || images[from.generator()]) {
        throw Error(ErrorKind::parse, "bad or repeated source generator in \"" + token + "\"");
      }
      images[from.generator()] = single_letter(token.substr(arrow + 2));
    }
    std::vector<Letter> full;
    for (Generator g = 0; g < images.size(); ++g) {
      full.push_back(images[g].value_or(Letter(g, 1)));
    }
    return WhiteheadAut::relabeling(std::move(full));
  }
  if (kind == "mult") {
    if (!(in >> token)) {
      throw Error(ErrorKind::parse, "mult needs a multiplier letter");
    }
    Letter a = single_letter(token);
    std::vector<Action> actions(alphabet.rank(), Action::keep);
    while (in >> token) {
      auto colon = token.find(':');
      if (colon == std::string::npos) {
        throw Error(ErrorKind::parse, "expected <gen>:<action>, got \"" + token + "\"");
      }
      Letter x = single_letter(token.substr(0, colon));
      std::string name = token.substr(colon + 1);
      Action act;
      if (name == "keep") {
        act = Action::keep;
      } else if (name == "right") {
        act = Action::right;
      } else if (name == "left") {
        act = Action::left;
      } else if (name == "conj") {
        act = Action::conj;
      } else {
        throw Error(ErrorKind::parse, "unknown action \"" + name + "\"");
      }
      if (!x.positive()) {
        throw Error(ErrorKind::parse, "action target must be a generator: \"" + token + "\"");
      }
      actions[x.generator()] = act;
    }
    return WhiteheadAut::multiplier(a, std::move(actions));
  }
  throw Error(ErrorKind::parse, "automorphism must start with 'perm' or 'mult'");
}

}  // namespace ellgraph

std::size_t std::hash<ellgraph::WordTuple>::operator()(
    const ellgraph::WordTuple& t) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& w : t.entries) {
    h ^= std::hash<ellgraph::CyclicWord>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}
