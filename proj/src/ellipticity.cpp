#include "ellgraph/ellipticity.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

#include "ellgraph/error.hpp"
#include "ellgraph/kernels.hpp"

namespace ellgraph {

namespace {

constexpr std::array<std::pair<Factor, Factor>, 4> kPairOrder{{
    {Factor::a, Factor::a},
    {Factor::a, Factor::b},
    {Factor::b, Factor::a},
    {Factor::b, Factor::b},
}};

void require_same_rank(const FreeSplitting& s1, const FreeSplitting& s2) {
  if (s1.rank() != s2.rank()) {
    throw Error(ErrorKind::alphabet_mismatch, "splittings live in free groups of different rank");
  }
}

std::vector<Word> apply_all(const Automorphism& phi, std::span<const Word> ws) {
  std::vector<Word> out;
  out.reserve(ws.size());
  for (const Word& w : ws) {
    out.push_back(phi.apply(w));
  }
  return out;
}

std::vector<Word> generator_words(const std::vector<Generator>& gens) {
  std::vector<Word> out;
  for (Generator g : gens) {
    out.push_back(Word{Letter(g, 1)});
  }
  return out;
}

template <class FirstCycle>
EllipticityAnswer common_elliptic(const FreeSplitting& s1, const FreeSplitting& s2,
                                  FirstCycle first_cycle) {
  require_same_rank(s1, s2);
  std::array<TypeGraph, 2> t1{type_graph_embedding(s1.factor(Factor::a)),
                              type_graph_embedding(s1.factor(Factor::b))};
  std::array<TypeGraph, 2> t2{type_graph_embedding(s2.factor(Factor::a)),
                              type_graph_embedding(s2.factor(Factor::b))};
  std::vector<XDigraph> left;
  std::vector<XDigraph> right;
  for (auto [f1, f2] : kPairOrder) {
    left.push_back(t1[static_cast<int>(f1)].graph);
    right.push_back(t2[static_cast<int>(f2)].graph);
  }
  EllipticityAnswer answer;
  std::optional<ProductCycle> c = first_cycle(left, right);
  if (!c) {
    return answer;
  }
  auto [f1, f2] = kPairOrder[c->pair_index];
  const TypeGraph& g1 = t1[static_cast<int>(f1)];
  const TypeGraph& g2 = t2[static_cast<int>(f2)];
  CommonElliptic cert;
  cert.first = f1;
  cert.second = f2;
  cert.element = c->loop;
  cert.conj_first = tree_path_label(s1.factor(f1), g1.origin[c->left]);
  cert.conj_second = tree_path_label(s2.factor(f2), g2.origin[c->right]);
  answer.decision = true;
  answer.element = cyclic_reduce(c->loop).core;
  answer.certificate = std::move(cert);
  return answer;
}

}  // namespace

std::vector<Word> FreeSplitting::basis() const {
  std::vector<Word> out = basis_a_;
  out.insert(out.end(), basis_b_.begin(), basis_b_.end());
  return out;
}

FreeSplitting verify_splitting(std::vector<Word> basis_a, std::vector<Word> basis_b,
                               std::size_t rank) {
  if (basis_a.empty() || basis_b.empty()) {
    throw Error(ErrorKind::invalid_argument, "both factors of a splitting need generators");
  }
  for (const auto* list : {&basis_a, &basis_b}) {
    for (const Word& w : *list) {
      check_in_alphabet(w.letters(), rank);
    }
  }
  std::vector<Word> all = basis_a;
  all.insert(all.end(), basis_b.begin(), basis_b.end());
  Subgroup whole = build_subgroup(all, rank);
  const XDigraph& g = whole.graph();
  if (g.vertex_count() != 1 || g.edge_count() != rank) {
    throw Error(ErrorKind::does_not_generate, "factors do not generate the free group");
  }
  Subgroup a = build_subgroup(basis_a, rank);
  Subgroup b = build_subgroup(basis_b, rank);
  if (basis_a.size() + basis_b.size() != rank ||
      spanning_tree_basis(a).size() + spanning_tree_basis(b).size() != rank) {
    throw Error(ErrorKind::rank_mismatch, "factor ranks do not add up to the rank of F");
  }
  return FreeSplitting(std::move(basis_a), std::move(basis_b), rank, std::move(a), std::move(b));
}

EllipticityAnswer splittings_distance_two(const FreeSplitting& s1, const FreeSplitting& s2) {
  return common_elliptic(s1, s2, [](const auto& l, const auto& r) {
    return parallel::first_product_cycle(l, r);
  });
}

EllipticityAnswer splittings_distance_two_serial(const FreeSplitting& s1,
                                                 const FreeSplitting& s2) {
  return common_elliptic(s1, s2, [](const auto& l, const auto& r) {
    return serial::first_product_cycle(l, r);
  });
}

EllipticityAnswer words_distance_two(const CyclicWord& v, const CyclicWord& w,
                                     std::size_t rank) {
  if (v.empty() || w.empty()) {
    throw Error(ErrorKind::trivial_word, "distance-two query needs nontrivial words");
  }
  check_in_alphabet(v.letters(), rank);
  check_in_alphabet(w.letters(), rank);
  Minimization m = minimize_tuple(WordTuple{{v, w}}, rank);
  const CyclicWord& v1 = m.minimal.entries[0];
  const CyclicWord& w1 = m.minimal.entries[1];
  PairClass cls = classify_pair(v1, w1, rank);
  EllipticityAnswer answer;
  if (!is_good(cls)) {
    return answer;
  }
  std::vector<Generator> x1 = letter_support(v1);
  if (cls == PairClass::frugal || cls == PairClass::both) {
    std::vector<Generator> lw = letter_support(w1);
    std::vector<Generator> merged;
    std::set_union(x1.begin(), x1.end(), lw.begin(), lw.end(), std::back_inserter(merged));
    x1 = std::move(merged);
  }
  std::vector<Generator> x2;
  for (Generator g = 0; g < rank; ++g) {
    if (!std::binary_search(x1.begin(), x1.end(), g)) {
      x2.push_back(g);
    }
  }
  // φ = τ_k∘…∘τ_1, so φ⁻¹(x) = τ_1⁻¹(…τ_k⁻¹(x)).
  auto pull_back = [&](Word u) {
    for (auto it = m.descent.rbegin(); it != m.descent.rend(); ++it) {
      u = it->inverse().apply(u);
    }
    return u;
  };
  std::vector<Word> a;
  std::vector<Word> b;
  for (const Word& x : generator_words(x1)) {
    a.push_back(pull_back(x));
  }
  for (const Word& x : generator_words(x2)) {
    b.push_back(pull_back(x));
  }
  answer.decision = true;
  answer.splitting = verify_splitting(std::move(a), std::move(b), rank);
  return answer;
}

std::optional<Factor> elliptic_factor(const FreeSplitting& s, const CyclicWord& w) {
  check_in_alphabet(w.letters(), s.rank());
  if (w.empty()) {
    throw Error(ErrorKind::trivial_word, "the trivial word is elliptic to everything");
  }
  std::vector<Word> gen{w.as_word()};
  XDigraph tw = type_graph(build_subgroup(gen, s.rank()));
  for (Factor f : {Factor::a, Factor::b}) {
    if (has_cycle(product(tw, type_graph(s.factor(f))).graph)) {
      return f;
    }
  }
  return std::nullopt;
}

Word primitive_in_intersection(const FreeSplitting& s1, Factor factor1, const FreeSplitting& s2,
                               Factor factor2) {
  require_same_rank(s1, s2);
  const std::size_t n = s1.rank();
  if (intersect(s1.factor(factor1), s2.factor(factor2)).is_trivial()) {
    throw Error(ErrorKind::trivial_intersection, "the chosen factors intersect trivially");
  }
  // In the basis adapted to s1 the factor is a sub-rose on consecutive letters.
  Automorphism phi(s1.basis());
  Automorphism psi = phi.inverse();
  const std::size_t size_a = s1.basis_a().size();
  std::vector<Generator> letters;
  for (Generator g = 0; g < n; ++g) {
    if ((g < size_a) == (factor1 == Factor::a)) {
      letters.push_back(g);
    }
  }
  std::vector<Word> h_gens = generator_words(letters);
  std::vector<Word> k_gens = apply_all(psi, s2.basis(factor2));
  Subgroup inter = intersect(build_subgroup(h_gens, n), build_subgroup(k_gens, n));
  std::vector<Word> basis = spanning_tree_basis(inter);
  return phi.apply(basis.front());
}

NielsenBound nielsen_bound(const FreeSplitting& s1, const FreeSplitting& s2) {
  require_same_rank(s1, s2);
  if (s1.rank() < 2) {
    throw Error(ErrorKind::invalid_argument, "the bound needs at least two generators");
  }
  std::vector<Word> y = s2.basis();
  std::vector<Word> x = s1.basis();
  std::vector<Generator> all(s1.rank());
  std::iota(all.begin(), all.end(), Generator{0});
  if (x != generator_words(all)) {
    y = apply_all(Automorphism(x).inverse(), y);
  }
  NielsenBound out;
  out.moves = nielsen_decompose(y, s1.rank());
  out.bound = 2 * out.moves.size();
  return out;
}

FreeSplitting parse_splitting(std::string_view text, const Alphabet& alphabet) {
  std::istringstream in{std::string(text)};
  std::string tok;
  if (!(in >> tok) || tok != "split") {
    throw Error(ErrorKind::parse, "splitting must start with 'split': expected split <words> | <words>");
  }
  std::vector<Word> a;
  std::vector<Word> b;
  bool bar = false;
  while (in >> tok) {
    if (tok == "|") {
      if (bar) {
        throw Error(ErrorKind::parse, "second '|' in splitting");
      }
      bar = true;
      continue;
    }
    (bar ? b : a).push_back(parse_word(tok, alphabet));
  }
  if (!bar) {
    throw Error(ErrorKind::parse, "missing '|' in splitting: expected split <words> | <words>");
  }
  return verify_splitting(std::move(a), std::move(b), alphabet.rank());
}

std::string format_splitting(const FreeSplitting& s, const Alphabet& alphabet) {
  std::string out = "split";
  for (const Word& w : s.basis_a()) {
    out += ' ' + format_word(w, alphabet);
  }
  out += " |";
  for (const Word& w : s.basis_b()) {
    out += ' ' + format_word(w, alphabet);
  }
  return out;
}

}  // namespace ellgraph
