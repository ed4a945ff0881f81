#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "helpers.hpp"

using namespace testing;

namespace {

XDigraph relabel(const XDigraph& g, const std::vector<Vertex>& perm) {
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    edges.push_back({perm[e.from], perm[e.to], e.label});
  }
  std::optional<Vertex> base;
  if (g.base()) {
    base = perm[*g.base()];
  }
  return XDigraph(g.rank(), g.vertex_count(), edges, base);
}

XDigraph cycle_of_a(std::size_t n, bool flip_one) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) {
    Vertex w = (v + 1) % n;
    edges.push_back(flip_one && v == 0 ? Edge{w, v, 0} : Edge{v, w, 0});
  }
  return XDigraph(1, n, edges, Vertex{0});
}

}  // namespace

TEST_CASE("build_subgroup examples") {
  Subgroup a = H("a");
  CHECK(a.graph().vertex_count() == 1);
  CHECK(a.graph().edge_count() == 1);

  Subgroup trivial = build_subgroup(std::vector<Word>{}, 2);
  CHECK(trivial.graph().vertex_count() == 1);
  CHECK(trivial.is_trivial());

  Subgroup h = H("baB");
  CHECK(h.graph().vertex_count() == 2);
  CHECK(h.graph().edges()[0] == Edge{0, 1, 1});
  CHECK(h.graph().edges()[1] == Edge{1, 1, 0});
  CHECK(contains(h, W("baB")));
  CHECK(contains(h, W("baaB")));
  CHECK_FALSE(contains(h, W("a")));
}

TEST_CASE("fold examples") {
  XDigraph two_a(2, 3, {{0, 1, 0}, {0, 2, 0}}, Vertex{0});
  XDigraph f = fold(two_a);
  CHECK(f.vertex_count() == 2);
  CHECK(f.edge_count() == 1);
  CHECK(f.is_folded());

  XDigraph folded = H("baB").graph();
  CHECK(digraph_isomorphic(fold(folded), folded));

  std::vector<Word> twice = Ws("ab ab");
  XDigraph g = core(fold(wedge_of_loops(twice, 2)), 0);
  CHECK(based_isomorphic(g, H("ab").graph()));
}

TEST_CASE("core examples") {
  XDigraph lone(2, 1, {}, Vertex{0});
  CHECK(core(lone, 0) == lone);

  XDigraph dangling(2, 2, {{0, 0, 0}, {0, 1, 1}}, Vertex{0});
  XDigraph c = core(dangling, 0);
  CHECK(c.vertex_count() == 1);
  CHECK(c.edge_count() == 1);

  XDigraph lollipop(2, 2, {{0, 1, 1}, {1, 1, 0}}, Vertex{0});
  CHECK(core(lollipop, 0) == lollipop);
}

TEST_CASE("contains examples") {
  Subgroup h = H("baB");
  CHECK(contains(h, W("baaB")));
  CHECK_FALSE(contains(h, W("a")));
  CHECK_FALSE(oracle::in_subgroup_bounded({oracle::from_word(W("baB"))},
                                          oracle::from_word(W("a")), 4));
  CHECK(contains(h, Word()));
  CHECK(contains(H("aab abb"), Word()));
  CHECK_THROWS_AS(contains(h, W("c", 3)), Error);
}

TEST_CASE("membership agrees with bounded products") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Word> gens = random_gens(rng, 2, 2, 3);
    Subgroup h = build_subgroup(gens, 2);
    std::vector<oracle::Raw> raw;
    for (const Word& g : gens) {
      raw.push_back(oracle::from_word(g));
      CHECK(contains(h, g));
    }
    for (const oracle::Raw& w : oracle::reduced_words(2, 4)) {
      // Anything reachable by ≤3 factors is a member; the converse is not checked.
      if (oracle::in_subgroup_bounded(raw, w, 3)) {
        CHECK(contains(h, oracle::to_word(w)));
      }
    }
  }
}

TEST_CASE("type_graph examples") {
  CHECK(type_graph(H("a")) == H("a").graph());
  XDigraph t = type_graph(H("baB"));
  CHECK(t.vertex_count() == 1);
  CHECK(t.edge_count() == 1);
  CHECK(digraph_isomorphic(t, H("a").graph()));
  Subgroup trivial = build_subgroup(std::vector<Word>{}, 2);
  CHECK(type_graph(trivial) == trivial.graph());

  TypeGraph emb = type_graph_embedding(H("baB"));
  CHECK(emb.origin == std::vector<Vertex>{1});
}

TEST_CASE("product examples") {
  ProductGraph p = product(H("a").graph(), H("a b").graph());
  CHECK(p.graph.vertex_count() == 1);
  CHECK(p.graph.edge_count() == 1);

  p = product(H("a").graph(), H("b").graph());
  CHECK(p.graph.vertex_count() == 1);
  CHECK(p.graph.edge_count() == 0);

  p = product(H("aa").graph(), H("aaa").graph());
  CHECK(p.graph.vertex_count() == 6);
  CHECK(p.graph.edge_count() == 6);
  CHECK(p.graph.is_folded());
  Subgroup six = intersect(H("aa"), H("aaa"));
  CHECK(six.graph().vertex_count() == 6);
  for (int k = 1; k <= 12; ++k) {
    CHECK(contains(six, Word(std::vector<Letter>(static_cast<std::size_t>(k), Letter(0, 1)))) ==
          (k % 6 == 0));
  }
  CHECK_THROWS_AS(product(H("a").graph(), H("a", 3).graph()), Error);
}

TEST_CASE("intersect examples") {
  Subgroup i = intersect(H("a"), H("aa"));
  CHECK(i == H("aa"));
  CHECK(i.graph().vertex_count() == 2);
  CHECK(intersect(H("a"), H("b")).is_trivial());
  Subgroup j = intersect(H("a b", 3), H("b c", 3));
  CHECK(j == H("b", 3));
  CHECK(contains(j, W("b", 3)));
  CHECK_FALSE(contains(j, W("a", 3)));
  CHECK_FALSE(contains(j, W("c", 3)));
}

TEST_CASE("conjugate_subgroups examples") {
  CHECK(conjugate_subgroups(H("baB"), H("a")));
  CHECK_FALSE(conjugate_subgroups(H("a"), H("b")));
  CHECK_FALSE(conjugate_subgroups(H("aa"), H("a")));
}

TEST_CASE("digraph_isomorphic examples") {
  XDigraph g = H("aab abAB").graph();
  std::vector<Vertex> perm(g.vertex_count());
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::reverse(perm.begin(), perm.end());
  CHECK(digraph_isomorphic(g, relabel(g, perm)));
  CHECK_FALSE(digraph_isomorphic(H("a").graph(), H("b").graph()));
  // Every seed is tried; none maps the flipped cycle onto the plain one.
  CHECK_FALSE(digraph_isomorphic(cycle_of_a(6, false), cycle_of_a(6, true)));
  CHECK(digraph_isomorphic(cycle_of_a(6, true), cycle_of_a(6, true)));
}

TEST_CASE("isomorphism of unfolded and disconnected digraphs") {
  // two parallel a-edges plus a b-loop, in two numberings
  XDigraph g(2, 3, {{0, 1, 0}, {0, 1, 0}, {2, 2, 1}}, Vertex{0});
  XDigraph h(2, 3, {{2, 2, 1}, {1, 0, 0}, {1, 0, 0}}, Vertex{1});
  XDigraph k(2, 3, {{0, 1, 0}, {1, 0, 0}, {2, 2, 1}}, Vertex{0});
  CHECK(digraph_isomorphic(g, h));
  CHECK(based_isomorphic(g, h));
  CHECK_FALSE(based_isomorphic(g, h.with_base(Vertex{0})));
  CHECK_FALSE(digraph_isomorphic(g, k));
  // a-loop and b-loop on separate vertices, listed in either order
  XDigraph p(2, 2, {{0, 0, 0}, {1, 1, 1}}, Vertex{0});
  XDigraph q(2, 2, {{1, 1, 0}, {0, 0, 1}}, Vertex{1});
  CHECK(digraph_isomorphic(p, q));
  CHECK(based_isomorphic(p, q));
  CHECK_FALSE(based_isomorphic(p, q.with_base(Vertex{0})));
  // folded against unfolded
  CHECK_FALSE(digraph_isomorphic(cycle_of_a(6, false), cycle_of_a(6, true)));
}

TEST_CASE("spanning_tree_basis examples") {
  CHECK(spanning_tree_basis(build_subgroup(std::vector<Word>{}, 2)).empty());
  auto b = spanning_tree_basis(H("baB"));
  REQUIRE(b.size() == 1);
  CHECK(str(b[0]) == "baB");
  b = spanning_tree_basis(H("a b"));
  REQUIRE(b.size() == 2);
  CHECK(str(b[0]) == "a");
  CHECK(str(b[1]) == "b");
}

TEST_CASE("has_cycle examples") {
  CHECK_FALSE(has_cycle(XDigraph(1, 1, {})));
  CHECK(has_cycle(XDigraph(1, 1, {{0, 0, 0}})));
  XDigraph two(1, 5, {{0, 1, 0}, {2, 3, 0}, {3, 4, 0}, {4, 2, 0}});
  CHECK(has_cycle(two));
  auto c = find_cycle(two);
  REQUIRE(c);
  CHECK(c->loop.size() == 3);
}

TEST_CASE("round trip through a spanning-tree basis") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t rank = trial % 2 == 0 ? 2 : 3;
    Subgroup h = build_subgroup(random_gens(rng, rank, 3, 5), rank);
    auto basis = spanning_tree_basis(h);
    CHECK(basis.size() == h.free_rank());
    CHECK(based_isomorphic(build_subgroup(basis, rank).graph(), h.graph()));
  }
}

TEST_CASE("folding is confluent under vertex shuffles") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Word> gens = random_gens(rng, 2, 3, 5);
    XDigraph wedge = wedge_of_loops(gens, 2);
    std::vector<Vertex> perm(wedge.vertex_count());
    std::iota(perm.begin(), perm.end(), Vertex{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    XDigraph shuffled = relabel(wedge, perm);
    XDigraph a = fold(wedge);
    XDigraph b = fold(shuffled);
    CHECK(b.is_folded());
    CHECK(based_isomorphic(a, b));
  }
}

TEST_CASE("generators are members, Type is idempotent, conjugates are conjugate") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t rank = trial % 2 == 0 ? 2 : 3;
    std::vector<Word> gens = random_gens(rng, rank, 3, 5);
    Subgroup h = build_subgroup(gens, rank);
    for (const Word& g : gens) {
      CHECK(contains(h, g));
    }
    XDigraph t = type_graph(h);
    for (Vertex v = 0; v < t.vertex_count(); ++v) {
      Subgroup again = Subgroup::from_graph(t.with_base(v));
      CHECK(digraph_isomorphic(type_graph(again), t));
    }
    Word x = random_word(rng, rank, 3);
    std::vector<Word> conj;
    for (const Word& g : gens) {
      conj.push_back(x * g * x.inverse());
    }
    CHECK(conjugate_subgroups(h, build_subgroup(conj, rank)));
  }
}

TEST_CASE("cyclically reduced members force base degree two") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    Subgroup h = build_subgroup(random_gens(rng, 2, 2, 4), 2);
    for (const oracle::Raw& raw : oracle::reduced_words(2, 5)) {
      Word w = oracle::to_word(raw);
      if (w.empty() || cyclic_reduce(w).core.size() != w.size() || !contains(h, w)) {
        continue;
      }
      CHECK(h.graph().degrees()[h.base()] >= 2);
    }
  }
}

TEST_CASE("cycle witnesses and conjugators") {
  Subgroup h = H("baB abAB");
  auto c = find_cycle(h.graph());
  REQUIRE(c);
  CHECK(h.table().trace(c->root, c->loop.letters()) == c->root);
  auto z = conjugate_into(H("baB"), W("a"));
  REQUIRE(z);
  CHECK(contains(H("baB"), *z * W("a") * z->inverse()));
  CHECK_FALSE(conjugate_into(H("baB"), W("b")));
}

TEST_CASE("graph text format") {
  Alphabet ab = Alphabet::standard(2);
  XDigraph g = H("baB").graph();
  CHECK(format_graph(g, ab) == "v 2\nbase 0\ne 0 1 b\ne 1 1 a\n");
  CHECK(parse_graph(format_graph(g, ab), ab) == g);
  CHECK(parse_graph("# comment\nv 1\n\ne 0 0 a\n", ab).edge_count() == 1);
  CHECK_THROWS_AS(parse_graph("v 1\ne 0 3 a\n", ab), Error);
  CHECK_THROWS_AS(parse_graph("e 0 0 z\n", ab), Error);
  CHECK_THROWS_AS(Subgroup::from_graph(XDigraph(2, 3, {{0, 1, 0}, {0, 2, 0}}, Vertex{0})), Error);
}
