#include "ellgraph/nielsen.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "ellgraph/error.hpp"
#include "ellgraph/stallings.hpp"

namespace ellgraph {

namespace {

using Tuple = std::vector<Word>;

struct TupleHash {
  std::size_t operator()(const Tuple& t) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (const Word& w : t) {
      h ^= std::hash<Word>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// u_i ← u_i·u_j^power (right) or u_j^power·u_i (left).
struct GeneralMove {
  std::size_t i = 0;
  std::size_t j = 0;
  int power = 1;
  bool left = false;
};

Word power_of(const Word& w, int power) { return power > 0 ? w : w.inverse(); }

void apply_general(Tuple& t, const GeneralMove& g) {
  Word other = power_of(t[g.j], g.power);
  t[g.i] = g.left ? other * t[g.i] : t[g.i] * other;
}

void expand(const GeneralMove& g, std::vector<NielsenMove>& out) {
  if (g.left) {
    // u_j^p·u_i = (u_i⁻¹·u_j^-p)⁻¹
    out.push_back(NielsenMove::invert(g.i));
    expand({g.i, g.j, -g.power, false}, out);
    out.push_back(NielsenMove::invert(g.i));
  } else if (g.power > 0) {
    out.push_back(NielsenMove::right_multiply(g.i, g.j));
  } else {
    out.push_back(NielsenMove::invert(g.j));
    out.push_back(NielsenMove::right_multiply(g.i, g.j));
    out.push_back(NielsenMove::invert(g.j));
  }
}

// Undoing an elementary move on a tuple.
void unapply_move(Tuple& t, const NielsenMove& m) {
  if (m.kind == NielsenMove::Kind::invert) {
    t[m.target] = t[m.target].inverse();
  } else {
    t[m.target] = t[m.target] * t[m.by].inverse();
  }
}

std::vector<NielsenMove> all_moves(std::size_t rank) {
  std::vector<NielsenMove> moves;
  for (Generator x = 0; x < rank; ++x) {
    moves.push_back(NielsenMove::invert(x));
  }
  for (Generator x = 0; x < rank; ++x) {
    for (Generator y = 0; y < rank; ++y) {
      if (x != y) {
        moves.push_back(NielsenMove::right_multiply(x, y));
      }
    }
  }
  return moves;
}

Tuple standard_basis(std::size_t rank) {
  Tuple t;
  for (Generator g = 0; g < rank; ++g) {
    t.push_back(Word{Letter(g, 1)});
  }
  return t;
}

// Drops adjacent repeated inversions of the same generator.
std::vector<NielsenMove> cancel_inversions(const std::vector<NielsenMove>& moves) {
  std::vector<NielsenMove> out;
  for (const NielsenMove& m : moves) {
    if (m.kind == NielsenMove::Kind::invert && !out.empty() && out.back() == m) {
      out.pop_back();
    } else {
      out.push_back(m);
    }
  }
  return out;
}

constexpr std::size_t kSearchDepth = 10;
constexpr std::size_t kSearchStates = 60000;

// Meet-in-the-middle breadth-first search between X and the target; forward
// steps apply moves, backward steps undo them. nullopt once the depth or state
// budget runs out.
std::optional<std::vector<NielsenMove>> shortest_decomposition(const Tuple& target,
                                                               std::size_t rank) {
  struct Visit {
    Tuple parent;
    NielsenMove move;
    std::size_t depth = 0;
    bool root = false;
  };
  using Side = std::unordered_map<Tuple, Visit, TupleHash>;
  const auto moves = all_moves(rank);
  const Tuple start = standard_basis(rank);
  if (start == target) {
    return std::vector<NielsenMove>{};
  }
  Side fwd;
  Side bwd;
  fwd.emplace(start, Visit{{}, {}, 0, true});
  bwd.emplace(target, Visit{{}, {}, 0, true});
  std::vector<Tuple> fwd_layer{start};
  std::vector<Tuple> bwd_layer{target};
  std::size_t fwd_depth = 0;
  std::size_t bwd_depth = 0;

  auto path_to = [](const Side& side, Tuple t) {
    std::vector<NielsenMove> path;
    for (const Visit* v = &side.at(t); !v->root; v = &side.at(v->parent)) {
      path.push_back(v->move);
    }
    return path;  // from t back towards the root
  };

  while (fwd_depth + bwd_depth < kSearchDepth && !fwd_layer.empty() && !bwd_layer.empty()) {
    const bool forward = fwd_layer.size() <= bwd_layer.size();
    Side& mine = forward ? fwd : bwd;
    const Side& theirs = forward ? bwd : fwd;
    std::vector<Tuple>& layer = forward ? fwd_layer : bwd_layer;
    std::size_t& depth = forward ? fwd_depth : bwd_depth;

    std::vector<Tuple> next;
    std::optional<Tuple> meet;
    for (const Tuple& t : layer) {
      for (const NielsenMove& m : moves) {
        Tuple s = t;
        if (forward) {
          apply_move(s, m);
        } else {
          unapply_move(s, m);
        }
        if (std::any_of(s.begin(), s.end(), [](const Word& w) { return w.empty(); })) {
          continue;
        }
        if (!mine.emplace(s, Visit{t, m, depth + 1, false}).second) {
          continue;
        }
        if (auto it = theirs.find(s); it != theirs.end()) {
          if (!meet || it->second.depth < theirs.at(*meet).depth) {
            meet = s;
          }
        }
        next.push_back(std::move(s));
      }
    }
    ++depth;
    if (meet) {
      // Forward path is recorded backwards; backward path is already in
      // application order from the meeting point to the target.
      std::vector<NielsenMove> head = path_to(fwd, *meet);
      std::reverse(head.begin(), head.end());
      for (const NielsenMove& m : path_to(bwd, *meet)) {
        head.push_back(m);
      }
      return head;
    }
    if (fwd.size() + bwd.size() > kSearchStates) {
      return std::nullopt;
    }
    layer = std::move(next);
  }
  return std::nullopt;
}

bool is_signed_permutation(const Tuple& t) {
  std::vector<bool> seen(t.size(), false);
  for (const Word& w : t) {
    if (w.size() != 1 || w[0].generator() >= t.size() || seen[w[0].generator()]) {
      return false;
    }
    seen[w[0].generator()] = true;
  }
  return true;
}

std::vector<GeneralMove> general_moves(std::size_t rank) {
  std::vector<GeneralMove> moves;
  for (std::size_t i = 0; i < rank; ++i) {
    for (std::size_t j = 0; j < rank; ++j) {
      if (i == j) {
        continue;
      }
      for (int power : {1, -1}) {
        moves.push_back({i, j, power, false});
        moves.push_back({i, j, power, true});
      }
    }
  }
  return moves;
}

std::size_t total_length(const Tuple& t) {
  std::size_t n = 0;
  for (const Word& w : t) {
    n += w.size();
  }
  return n;
}

std::optional<GeneralMove> first_shortening(const Tuple& t,
                                            const std::vector<GeneralMove>& moves) {
  for (const GeneralMove& g : moves) {
    Word other = power_of(t[g.j], g.power);
    Word next = g.left ? other * t[g.i] : t[g.i] * other;
    if (next.size() < t[g.i].size()) {
      return g;
    }
  }
  return std::nullopt;
}

// Length-preserving moves leading to a tuple that some move can shorten.
std::vector<GeneralMove> escape_plateau(const Tuple& t, const std::vector<GeneralMove>& moves) {
  const std::size_t length = total_length(t);
  std::unordered_map<Tuple, std::pair<Tuple, GeneralMove>, TupleHash> parent;
  parent.emplace(t, std::make_pair(Tuple{}, GeneralMove{}));
  std::deque<Tuple> queue{t};
  while (!queue.empty()) {
    Tuple cur = std::move(queue.front());
    queue.pop_front();
    if (cur != t && (first_shortening(cur, moves) || is_signed_permutation(cur))) {
      std::vector<GeneralMove> path;
      for (Tuple at = cur; at != t;) {
        const auto& [prev, g] = parent.at(at);
        path.push_back(g);
        at = prev;
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (const GeneralMove& g : moves) {
      Tuple s = cur;
      apply_general(s, g);
      if (total_length(s) == length && parent.emplace(s, std::make_pair(cur, g)).second) {
        queue.push_back(std::move(s));
      }
    }
  }
  throw Error(ErrorKind::not_a_basis, "Nielsen reduction stalled");
}

void require_basis(std::span<const Word> target, std::size_t rank) {
  if (target.size() != rank) {
    throw Error(ErrorKind::not_a_basis, "expected " + std::to_string(rank) + " words, got " +
                                            std::to_string(target.size()));
  }
  for (const Word& w : target) {
    check_in_alphabet(w.letters(), rank);
  }
  if (!is_basis(target, rank)) {
    throw Error(ErrorKind::not_a_basis, "the words do not form a basis");
  }
}

}  // namespace

NielsenMove NielsenMove::right_multiply(Generator x, Generator y) {
  if (x == y) {
    throw Error(ErrorKind::invalid_argument, "right multiplication needs distinct generators");
  }
  return {Kind::right_multiply, x, y};
}

void apply_move(std::vector<Word>& tuple, const NielsenMove& m) {
  if (m.target >= tuple.size() || m.by >= tuple.size()) {
    throw Error(ErrorKind::alphabet_mismatch, "Nielsen move outside the tuple");
  }
  if (m.kind == NielsenMove::Kind::invert) {
    tuple[m.target] = tuple[m.target].inverse();
  } else {
    tuple[m.target] = tuple[m.target] * tuple[m.by];
  }
}

std::vector<Word> apply_moves(std::span<const NielsenMove> moves, std::size_t rank) {
  Tuple t = standard_basis(rank);
  for (const NielsenMove& m : moves) {
    apply_move(t, m);
  }
  return t;
}

bool is_basis(std::span<const Word> words, std::size_t rank) {
  if (words.size() != rank) {
    return false;
  }
  Subgroup h = build_subgroup(words, rank);
  return h.graph().vertex_count() == 1 && h.graph().edge_count() == rank;
}

std::vector<NielsenMove> nielsen_reduce_decompose(std::span<const Word> target,
                                                  std::size_t rank) {
  require_basis(target, rank);
  const auto moves = general_moves(rank);
  Tuple t(target.begin(), target.end());
  std::vector<GeneralMove> reduction;
  while (!is_signed_permutation(t)) {
    if (auto g = first_shortening(t, moves)) {
      apply_general(t, *g);
      reduction.push_back(*g);
      continue;
    }
    for (const GeneralMove& g : escape_plateau(t, moves)) {
      apply_general(t, g);
      reduction.push_back(g);
    }
  }

  // X → t: sort generators into place by swaps, then fix signs.
  std::vector<NielsenMove> out;
  std::vector<Generator> at(rank);
  for (Generator g = 0; g < rank; ++g) {
    at[g] = g;
  }
  for (std::size_t i = 0; i < rank; ++i) {
    const Generator want = t[i][0].generator();
    const auto j = static_cast<std::size_t>(std::find(at.begin(), at.end(), want) - at.begin());
    if (j != i) {
      // (u_i, u_j) → (u_j, u_i)
      for (const NielsenMove& m :
           {NielsenMove::invert(i), NielsenMove::right_multiply(j, i), NielsenMove::invert(j),
            NielsenMove::right_multiply(i, j), NielsenMove::invert(i),
            NielsenMove::right_multiply(j, i)}) {
        out.push_back(m);
      }
      std::swap(at[i], at[j]);
    }
  }
  for (std::size_t i = 0; i < rank; ++i) {
    if (!t[i][0].positive()) {
      out.push_back(NielsenMove::invert(i));
    }
  }
  // t → target: undo the reduction, last move first.
  for (auto it = reduction.rbegin(); it != reduction.rend(); ++it) {
    expand({it->i, it->j, -it->power, it->left}, out);
  }
  out = cancel_inversions(out);
  if (apply_moves(out, rank) != Tuple(target.begin(), target.end())) {
    throw Error(ErrorKind::not_a_basis, "internal: Nielsen decomposition does not reproduce target");
  }
  return out;
}

std::vector<NielsenMove> nielsen_decompose(std::span<const Word> target, std::size_t rank) {
  require_basis(target, rank);
  if (auto shortest = shortest_decomposition(Tuple(target.begin(), target.end()), rank)) {
    return *shortest;
  }
  return nielsen_reduce_decompose(target, rank);
}

std::vector<NielsenMove> nielsen_decompose(std::span<const Word> target,
                                           const Alphabet& alphabet) {
  return nielsen_decompose(target, alphabet.rank());
}

// --- Automorphism -----------------------------------------------------------

Automorphism Automorphism::identity(std::size_t rank) {
  return Automorphism(standard_basis(rank), Unchecked{});
}

Automorphism Automorphism::from_moves(std::span<const NielsenMove> moves, std::size_t rank) {
  return Automorphism(apply_moves(moves, rank), Unchecked{});
}

Automorphism::Automorphism(std::vector<Word> images) : images_(std::move(images)) {
  require_basis(images_, images_.size());
}

Word Automorphism::apply(const Word& w) const {
  check_in_alphabet(w.letters(), rank());
  Word out;
  for (Letter l : w.letters()) {
    const Word& img = images_[l.generator()];
    out = out * (l.positive() ? img : img.inverse());
  }
  return out;
}

CyclicWord Automorphism::apply(const CyclicWord& w) const {
  return CyclicWord(apply(w.as_word()));
}

Automorphism Automorphism::inverse() const {
  // φ = ν₁∘…∘ν_m, so φ⁻¹ = ν_m⁻¹∘…∘ν₁⁻¹; build it on the identity tuple.
  // Any decomposition will do here, so skip the shortest-path search.
  auto moves = nielsen_reduce_decompose(images_, rank());
  Tuple t = standard_basis(rank());
  for (auto it = moves.rbegin(); it != moves.rend(); ++it) {
    unapply_move(t, *it);
  }
  return Automorphism(std::move(t), Unchecked{});
}

Automorphism Automorphism::compose(const Automorphism& inner) const {
  Tuple t;
  t.reserve(inner.rank());
  for (const Word& w : inner.images_) {
    t.push_back(apply(w));
  }
  return Automorphism(std::move(t), Unchecked{});
}

// --- Text format ------------------------------------------------------------

std::string format_move(const NielsenMove& m, const Alphabet& alphabet) {
  if (m.kind == NielsenMove::Kind::invert) {
    return "inv " + alphabet.symbol(m.target);
  }
  return "rmul " + alphabet.symbol(m.target) + " " + alphabet.symbol(m.by);
}

NielsenMove parse_move(std::string_view text, const Alphabet& alphabet) {
  std::istringstream in{std::string(text)};
  std::string kind;
  std::string x;
  std::string y;
  std::string extra;
  in >> kind >> x;
  auto gen = [&](const std::string& name) {
    auto g = alphabet.find(name);
    if (!g) {
      throw Error(ErrorKind::unknown_symbol, "unknown generator '" + name + "'");
    }
    return *g;
  };
  if (kind == "inv" && !x.empty() && !(in >> extra)) {
    return NielsenMove::invert(gen(x));
  }
  if (kind == "rmul" && (in >> y) && !(in >> extra)) {
    return NielsenMove::right_multiply(gen(x), gen(y));
  }
  throw Error(ErrorKind::parse, "expected 'inv <gen>' or 'rmul <gen> <gen>', got \"" +
                                    std::string(text) + "\"");
}

}  // namespace ellgraph
