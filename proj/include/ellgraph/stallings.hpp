#pragma once

#include <cstdint>
#include <tuple>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ellgraph/words.hpp"

namespace ellgraph {

using Vertex = std::size_t;

/// Positive edge of an X-digraph. The inverse edge of Γ̂ is implicit.
struct Edge {
  Vertex from = 0;
  Vertex to = 0;
  Generator label = 0;

  // Serialization order: (from, label, to).
  friend auto operator<=>(const Edge& a, const Edge& b) {
    return std::tie(a.from, a.label, a.to) <=> std::tie(b.from, b.label, b.to);
  }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Finite X-digraph on vertices 0..vertex_count-1 with an optional base.
/// Edges are kept sorted by (from, label, to).
class XDigraph {
 public:
  XDigraph() = default;
  XDigraph(std::size_t rank, std::size_t vertex_count, std::vector<Edge> edges,
           std::optional<Vertex> base = std::nullopt);

  std::size_t rank() const { return rank_; }
  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  std::optional<Vertex> base() const { return base_; }

  /// Degree in Γ̂: a loop contributes two.
  std::vector<std::size_t> degrees() const;
  bool is_folded() const;
  XDigraph with_base(std::optional<Vertex> base) const;

  bool operator==(const XDigraph&) const = default;

 private:
  std::size_t rank_ = 0;
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::optional<Vertex> base_;
};

/// Deterministic transition table of a folded digraph: step(v, letter) follows
/// the unique Γ̂-edge with that label out of v.
class FoldedTable {
 public:
  FoldedTable() = default;
  /// Throws invalid_argument if g is not folded.
  explicit FoldedTable(const XDigraph& g);

  std::optional<Vertex> step(Vertex v, Letter l) const {
    auto t = next_[v * letters_ + l.code()];
    if (t < 0) {
      return std::nullopt;
    }
    return static_cast<Vertex>(t);
  }
  /// Follows w from v; nullopt if some letter has no edge.
  std::optional<Vertex> trace(Vertex v, std::span<const Letter> w) const;

 private:
  std::size_t letters_ = 0;
  std::vector<std::int64_t> next_;
};

/// Γ(H): folded, core with respect to its base, vertices numbered
/// canonically (breadth-first from the base, letters in code order), so two
/// subgroups are equal iff their graphs are equal.
class Subgroup {
 public:
  /// Checks foldedness and the core property at g's base.
  static Subgroup from_graph(const XDigraph& g);

  const XDigraph& graph() const { return graph_; }
  Vertex base() const { return *graph_.base(); }
  std::size_t rank() const { return graph_.rank(); }
  bool is_trivial() const { return graph_.edge_count() == 0; }
  /// Rank of H as a free group: |E| − |V| + 1.
  std::size_t free_rank() const;
  const FoldedTable& table() const { return table_; }

  bool operator==(const Subgroup& o) const { return graph_ == o.graph_; }

 private:
  Subgroup(XDigraph g, FoldedTable t) : graph_(std::move(g)), table_(std::move(t)) {}

  XDigraph graph_;
  FoldedTable table_;
};

struct ProductGraph {
  XDigraph graph;
  /// pairs[i] is the (g-vertex, h-vertex) pair behind product vertex i.
  std::vector<std::pair<Vertex, Vertex>> pairs;

  std::optional<Vertex> index_of(Vertex u, Vertex v) const;
};

/// A nontrivial reduced closed path: loop ∈ L(graph, root).
struct CycleWitness {
  Vertex root = 0;
  Word loop;
};

/// Wedge of subdivided loops at the base, folded, pruned to the core.
Subgroup build_subgroup(std::span<const Word> generators, const Alphabet& alphabet);
Subgroup build_subgroup(std::span<const Word> generators, std::size_t rank);

XDigraph wedge_of_loops(std::span<const Word> generators, std::size_t rank);
XDigraph fold(const XDigraph& g);
XDigraph core(const XDigraph& g, Vertex v);

bool contains(const Subgroup& h, const Word& w);

struct TypeGraph {
  XDigraph graph;
  /// origin[v] is the vertex of Γ(H) that type vertex v came from.
  std::vector<Vertex> origin;
};

/// Γ(H) with the hanging path at the base removed (if the base has degree 1).
XDigraph type_graph(const Subgroup& h);
TypeGraph type_graph_embedding(const Subgroup& h);

ProductGraph product(const XDigraph& g, const XDigraph& h);
Subgroup intersect(const Subgroup& h, const Subgroup& k);

bool conjugate_subgroups(const Subgroup& h, const Subgroup& k);
bool digraph_isomorphic(const XDigraph& g, const XDigraph& h);
/// Isomorphism that must send base to base.
bool based_isomorphic(const XDigraph& g, const XDigraph& h);

std::vector<Word> spanning_tree_basis(const Subgroup& h);
/// Label of the breadth-first spanning-tree path from the base to v.
Word tree_path_label(const Subgroup& h, Vertex v);

bool has_cycle(const XDigraph& g);
/// Fundamental cycle of the first back edge met by depth-first search, read
/// from the root of its component. g must be folded.
std::optional<CycleWitness> find_cycle(const XDigraph& g);

/// Some z with z·w·z⁻¹ ∈ H, found by reading the cyclic reduction of w as a
/// closed path at each vertex of Γ(H). nullopt if w is not conjugate into H.
std::optional<Word> conjugate_into(const Subgroup& h, const Word& w);

std::string format_graph(const XDigraph& g, const Alphabet& alphabet);
XDigraph parse_graph(std::string_view text, const Alphabet& alphabet);
std::string format_dot(const XDigraph& g, const Alphabet& alphabet);

/// Whitespace-separated generator words.
std::vector<Word> parse_generators(std::string_view text, const Alphabet& alphabet);

}  // namespace ellgraph
