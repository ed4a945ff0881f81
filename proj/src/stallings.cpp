#include "ellgraph/stallings.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "ellgraph/error.hpp"
#include "union_find.hpp"

namespace ellgraph {

namespace {

constexpr std::int64_t kNone = -1;

// Renumbers the vertices with keep[v] set, in increasing index order, and
// drops every edge touching a removed vertex.
XDigraph restrict_to(const XDigraph& g, const std::vector<bool>& keep) {
  std::vector<std::int64_t> index(g.vertex_count(), kNone);
  std::size_t count = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (keep[v]) {
      index[v] = static_cast<std::int64_t>(count++);
    }
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (keep[e.from] && keep[e.to]) {
      edges.push_back({static_cast<Vertex>(index[e.from]), static_cast<Vertex>(index[e.to]),
                       e.label});
    }
  }
  std::optional<Vertex> base;
  if (g.base() && keep[*g.base()]) {
    base = static_cast<Vertex>(index[*g.base()]);
  }
  return XDigraph(g.rank(), count, std::move(edges), base);
}

// Repeatedly deletes vertices of Γ̂-degree ≤ max_degree (never `keep`).
std::vector<bool> peel(const XDigraph& g, std::size_t max_degree, std::optional<Vertex> keep) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> degree = g.degrees();
  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edges()[i];
    incident[e.from].push_back(i);
    if (e.to != e.from) {
      incident[e.to].push_back(i);
    }
  }
  std::vector<bool> alive(n, true);
  std::vector<bool> edge_alive(g.edge_count(), true);
  std::vector<Vertex> queue;
  auto removable = [&](Vertex v) {
    return alive[v] && degree[v] <= max_degree && (!keep || v != *keep);
  };
  for (Vertex v = 0; v < n; ++v) {
    if (removable(v)) {
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    Vertex v = queue.back();
    queue.pop_back();
    if (!removable(v)) {
      continue;
    }
    alive[v] = false;
    for (std::size_t i : incident[v]) {
      if (!edge_alive[i]) {
        continue;
      }
      edge_alive[i] = false;
      const Edge& e = g.edges()[i];
      Vertex other = e.from == v ? e.to : e.from;
      if (other != v) {
        --degree[other];
        if (removable(other)) {
          queue.push_back(other);
        }
      }
    }
  }
  return alive;
}

std::vector<bool> component_of(const XDigraph& g, Vertex start) {
  std::vector<std::vector<Vertex>> adj(g.vertex_count());
  for (const Edge& e : g.edges()) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<Vertex> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

// Breadth-first numbering from the base; the canonical form of a Subgroup.
XDigraph canonical_numbering(const XDigraph& g, const FoldedTable& table) {
  const Vertex base = *g.base();
  std::vector<std::int64_t> index(g.vertex_count(), kNone);
  std::vector<Vertex> order{base};
  index[base] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    Vertex v = order[head];
    for (std::size_t code = 0; code < 2 * g.rank(); ++code) {
      if (auto w = table.step(v, Letter::from_code(code)); w && index[*w] == kNone) {
        index[*w] = static_cast<std::int64_t>(order.size());
        order.push_back(*w);
      }
    }
  }
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    edges.push_back(
        {static_cast<Vertex>(index[e.from]), static_cast<Vertex>(index[e.to]), e.label});
  }
  return XDigraph(g.rank(), g.vertex_count(), std::move(edges), Vertex{0});
}

struct TreeStep {
  std::int64_t parent = kNone;
  Letter letter;  // letter read from parent to this vertex
};

// Breadth-first spanning tree from `root` exploring letters in code order.
std::vector<TreeStep> bfs_tree(const XDigraph& g, const FoldedTable& table, Vertex root) {
  std::vector<TreeStep> tree(g.vertex_count());
  std::vector<bool> seen(g.vertex_count(), false);
  std::deque<Vertex> queue{root};
  seen[root] = true;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (std::size_t code = 0; code < 2 * g.rank(); ++code) {
      Letter l = Letter::from_code(code);
      if (auto w = table.step(v, l); w && !seen[*w]) {
        seen[*w] = true;
        tree[*w] = {static_cast<std::int64_t>(v), l};
        queue.push_back(*w);
      }
    }
  }
  return tree;
}

// Label of the tree path from the root down to v.
Word path_from_root(const std::vector<TreeStep>& tree, Vertex v) {
  std::vector<Letter> rev;
  while (tree[v].parent != kNone) {
    rev.push_back(tree[v].letter);
    v = static_cast<Vertex>(tree[v].parent);
  }
  std::reverse(rev.begin(), rev.end());
  return Word(rev);
}

bool propagate_isomorphism(const XDigraph& g, const FoldedTable& gt, const XDigraph& h,
                           const FoldedTable& ht, Vertex g_seed, Vertex h_seed) {
  std::vector<std::int64_t> forward(g.vertex_count(), kNone);
  std::vector<std::int64_t> backward(h.vertex_count(), kNone);
  forward[g_seed] = static_cast<std::int64_t>(h_seed);
  backward[h_seed] = static_cast<std::int64_t>(g_seed);
  std::deque<Vertex> queue{g_seed};
  std::size_t mapped = 1;
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    auto image = static_cast<Vertex>(forward[u]);
    for (std::size_t code = 0; code < 2 * g.rank(); ++code) {
      Letter l = Letter::from_code(code);
      auto gu = gt.step(u, l);
      auto hu = ht.step(image, l);
      if (gu.has_value() != hu.has_value()) {
        return false;
      }
      if (!gu) {
        continue;
      }
      if (forward[*gu] == kNone) {
        if (backward[*hu] != kNone) {
          return false;
        }
        forward[*gu] = static_cast<std::int64_t>(*hu);
        backward[*hu] = static_cast<std::int64_t>(*gu);
        ++mapped;
        queue.push_back(*gu);
      } else if (forward[*gu] != static_cast<std::int64_t>(*hu)) {
        return false;
      }
    }
  }
  return mapped == g.vertex_count();
}

bool connected(const XDigraph& g) {
  detail::UnionFind uf(g.vertex_count());
  std::size_t parts = g.vertex_count();
  for (const Edge& e : g.edges()) {
    if (uf.unite(e.from, e.to)) {
      --parts;
    }
  }
  return parts <= 1;
}

// Plain backtracking over vertex assignments; for graphs the seed propagation
// cannot handle (parallel same-label edges, several components).
class Matcher {
 public:
  Matcher(const XDigraph& g, const XDigraph& h, std::optional<std::pair<Vertex, Vertex>> pin = {})
      : g_(g), h_(h), n_(g.vertex_count()), pin_(pin) {
    count(g, gc_);
    count(h, hc_);
    std::vector<std::vector<Vertex>> adj(n_);
    for (const Edge& e : g.edges()) {
      adj[e.from].push_back(e.to);
      adj[e.to].push_back(e.from);
    }
    std::vector<bool> seen(n_, false);
    std::vector<Vertex> roots;
    if (pin) {
      roots.push_back(pin->first);
    }
    for (Vertex r = 0; r < n_; ++r) {
      roots.push_back(r);
    }
    for (Vertex r : roots) {
      if (seen[r]) {
        continue;
      }
      seen[r] = true;
      std::deque<Vertex> queue{r};
      while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop_front();
        order_.push_back(u);
        for (Vertex v : adj[u]) {
          if (!seen[v]) {
            seen[v] = true;
            queue.push_back(v);
          }
        }
      }
    }
    gsig_ = signatures(g);
    hsig_ = signatures(h);
  }

  bool solve(std::size_t depth = 0) {
    if (depth == n_) {
      return true;
    }
    Vertex u = order_[depth];
    for (Vertex x = 0; x < n_; ++x) {
      if (used_.count(x) != 0 || gsig_[u] != hsig_[x] || (pin_ && u == pin_->first && x != pin_->second)) {
        continue;
      }
      map_[u] = x;
      used_.insert({x, u});
      if (consistent(u) && solve(depth + 1)) {
        return true;
      }
      map_.erase(u);
      used_.erase(x);
    }
    return false;
  }

 private:
  using Key = std::tuple<Vertex, Vertex, Generator>;
  using Counts = std::map<Key, std::size_t>;

  static void count(const XDigraph& g, Counts& c) {
    for (const Edge& e : g.edges()) {
      ++c[{e.from, e.to, e.label}];
    }
  }

  // (label, out, in, loops) per vertex
  static std::vector<std::vector<std::size_t>> signatures(const XDigraph& g) {
    std::vector<std::vector<std::size_t>> sig(g.vertex_count(),
                                              std::vector<std::size_t>(3 * g.rank(), 0));
    for (const Edge& e : g.edges()) {
      if (e.from == e.to) {
        ++sig[e.from][3 * e.label + 2];
      } else {
        ++sig[e.from][3 * e.label];
        ++sig[e.to][3 * e.label + 1];
      }
    }
    return sig;
  }

  static std::size_t at(const Counts& c, Vertex a, Vertex b, Generator l) {
    auto it = c.find({a, b, l});
    return it == c.end() ? 0 : it->second;
  }

  bool consistent(Vertex u) const {
    for (const auto& [v, y] : map_) {
      for (Generator l = 0; l < g_.rank(); ++l) {
        if (at(gc_, u, v, l) != at(hc_, map_.at(u), y, l) ||
            at(gc_, v, u, l) != at(hc_, y, map_.at(u), l)) {
          return false;
        }
      }
    }
    return true;
  }

  const XDigraph& g_;
  const XDigraph& h_;
  std::size_t n_;
  std::optional<std::pair<Vertex, Vertex>> pin_;
  Counts gc_;
  Counts hc_;
  std::vector<Vertex> order_;
  std::vector<std::vector<std::size_t>> gsig_;
  std::vector<std::vector<std::size_t>> hsig_;
  std::map<Vertex, Vertex> map_;
  std::map<Vertex, Vertex> used_;  // image -> preimage
};

}  // namespace

// --- XDigraph ---------------------------------------------------------------

XDigraph::XDigraph(std::size_t rank, std::size_t vertex_count, std::vector<Edge> edges,
                   std::optional<Vertex> base)
    : rank_(rank), vertex_count_(vertex_count), edges_(std::move(edges)), base_(base) {
  for (const Edge& e : edges_) {
    if (e.from >= vertex_count_ || e.to >= vertex_count_) {
      throw Error(ErrorKind::invalid_argument, "edge endpoint out of range");
    }
    if (e.label >= rank_) {
      throw Error(ErrorKind::alphabet_mismatch, "edge label out of alphabet range");
    }
  }
  if (base_ && *base_ >= vertex_count_) {
    throw Error(ErrorKind::invalid_argument, "base vertex out of range");
  }
  std::sort(edges_.begin(), edges_.end());
}

std::vector<std::size_t> XDigraph::degrees() const {
  std::vector<std::size_t> d(vertex_count_, 0);
  for (const Edge& e : edges_) {
    ++d[e.from];
    ++d[e.to];
  }
  return d;
}

bool XDigraph::is_folded() const {
  std::vector<char> out(vertex_count_ * rank_, 0);
  std::vector<char> in(vertex_count_ * rank_, 0);
  for (const Edge& e : edges_) {
    if (out[e.from * rank_ + e.label]++ != 0 || in[e.to * rank_ + e.label]++ != 0) {
      return false;
    }
  }
  return true;
}

XDigraph XDigraph::with_base(std::optional<Vertex> base) const {
  return XDigraph(rank_, vertex_count_, edges_, base);
}

// --- FoldedTable ------------------------------------------------------------

FoldedTable::FoldedTable(const XDigraph& g)
    : letters_(2 * g.rank()), next_(g.vertex_count() * 2 * g.rank(), kNone) {
  for (const Edge& e : g.edges()) {
    auto& fwd = next_[e.from * letters_ + Letter(e.label, 1).code()];
    auto& bwd = next_[e.to * letters_ + Letter(e.label, -1).code()];
    if (fwd != kNone || bwd != kNone) {
      throw Error(ErrorKind::invalid_argument, "digraph is not folded");
    }
    fwd = static_cast<std::int64_t>(e.to);
    bwd = static_cast<std::int64_t>(e.from);
  }
}

std::optional<Vertex> FoldedTable::trace(Vertex v, std::span<const Letter> w) const {
  for (Letter l : w) {
    if (l.code() >= letters_) {
      return std::nullopt;
    }
    auto next = step(v, l);
    if (!next) {
      return std::nullopt;
    }
    v = *next;
  }
  return v;
}

// --- Subgroup ---------------------------------------------------------------

Subgroup Subgroup::from_graph(const XDigraph& g) {
  if (!g.base()) {
    throw Error(ErrorKind::invalid_argument, "subgroup graph needs a base vertex");
  }
  FoldedTable table(g);
  XDigraph pruned = core(g, *g.base());
  if (pruned.vertex_count() != g.vertex_count() || pruned.edge_count() != g.edge_count()) {
    throw Error(ErrorKind::invalid_argument, "digraph is not core with respect to its base");
  }
  XDigraph canon = canonical_numbering(g, table);
  FoldedTable canon_table(canon);
  return Subgroup(std::move(canon), std::move(canon_table));
}

std::size_t Subgroup::free_rank() const {
  return graph_.edge_count() + 1 - graph_.vertex_count();
}

std::optional<Vertex> ProductGraph::index_of(Vertex u, Vertex v) const {
  auto it = std::find(pairs.begin(), pairs.end(), std::make_pair(u, v));
  if (it == pairs.end()) {
    return std::nullopt;
  }
  return static_cast<Vertex>(it - pairs.begin());
}

// --- Construction -----------------------------------------------------------

XDigraph wedge_of_loops(std::span<const Word> generators, std::size_t rank) {
  std::vector<Edge> edges;
  Vertex next_vertex = 1;
  for (const Word& w : generators) {
    check_in_alphabet(w.letters(), rank);
    Vertex cur = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      Vertex nxt = i + 1 == w.size() ? 0 : next_vertex++;
      Letter l = w[i];
      if (l.positive()) {
        edges.push_back({cur, nxt, l.generator()});
      } else {
        edges.push_back({nxt, cur, l.generator()});
      }
      cur = nxt;
    }
  }
  return XDigraph(rank, next_vertex, std::move(edges), Vertex{0});
}

XDigraph fold(const XDigraph& g) {
  const std::size_t n = g.vertex_count();
  const std::size_t r = g.rank();
  detail::UnionFind uf(n);
  bool merged = true;
  while (merged) {
    merged = false;
    std::unordered_map<std::size_t, Vertex> out;
    std::unordered_map<std::size_t, Vertex> in;
    for (const Edge& e : g.edges()) {
      Vertex from = uf.find(e.from);
      Vertex to = uf.find(e.to);
      auto [o, o_new] = out.try_emplace(from * r + e.label, to);
      if (!o_new && uf.unite(o->second, to)) {
        merged = true;
        to = uf.find(to);
      }
      auto [i, i_new] = in.try_emplace(to * r + e.label, from);
      if (!i_new && uf.unite(i->second, from)) {
        merged = true;
      }
    }
  }
  std::vector<std::int64_t> index(n, kNone);
  std::size_t count = 0;
  for (Vertex v = 0; v < n; ++v) {
    Vertex root = uf.find(v);
    if (index[root] == kNone) {
      index[root] = static_cast<std::int64_t>(count++);
    }
  }
  auto renumber = [&](Vertex v) { return static_cast<Vertex>(index[uf.find(v)]); };
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    edges.push_back({renumber(e.from), renumber(e.to), e.label});
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::optional<Vertex> base;
  if (g.base()) {
    base = renumber(*g.base());
  }
  return XDigraph(r, count, std::move(edges), base);
}

XDigraph core(const XDigraph& g, Vertex v) {
  if (v >= g.vertex_count()) {
    throw Error(ErrorKind::invalid_argument, "core vertex out of range");
  }
  XDigraph based = g.with_base(v);
  XDigraph peeled = restrict_to(based, peel(based, 1, v));
  return restrict_to(peeled, component_of(peeled, *peeled.base()));
}

Subgroup build_subgroup(std::span<const Word> generators, std::size_t rank) {
  XDigraph folded = fold(wedge_of_loops(generators, rank));
  return Subgroup::from_graph(core(folded, *folded.base()));
}

Subgroup build_subgroup(std::span<const Word> generators, const Alphabet& alphabet) {
  return build_subgroup(generators, alphabet.rank());
}

// --- Queries ----------------------------------------------------------------

bool contains(const Subgroup& h, const Word& w) {
  check_in_alphabet(w.letters(), h.rank());
  auto end = h.table().trace(h.base(), w.letters());
  return end && *end == h.base();
}

TypeGraph type_graph_embedding(const Subgroup& h) {
  const XDigraph& g = h.graph();
  std::vector<bool> alive(g.vertex_count(), true);
  if (g.degrees()[h.base()] == 1) {
    // In a core graph only the hanging path at the base has degree-one vertices.
    alive = peel(g, 1, std::nullopt);
  }
  TypeGraph out;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (alive[v]) {
      out.origin.push_back(v);
    }
  }
  out.graph = restrict_to(g, alive);
  return out;
}

XDigraph type_graph(const Subgroup& h) { return type_graph_embedding(h).graph; }

ProductGraph product(const XDigraph& g, const XDigraph& h) {
  if (g.rank() != h.rank()) {
    throw Error(ErrorKind::alphabet_mismatch, "product of digraphs over different alphabets");
  }
  ProductGraph out;
  std::unordered_map<std::size_t, Vertex> index;
  auto vertex = [&](Vertex u, Vertex v) {
    auto [it, fresh] = index.try_emplace(u * h.vertex_count() + v, out.pairs.size());
    if (fresh) {
      out.pairs.emplace_back(u, v);
    }
    return it->second;
  };
  std::optional<Vertex> base;
  if (g.base() && h.base()) {
    base = vertex(*g.base(), *h.base());
  }
  std::vector<std::vector<const Edge*>> by_label(h.rank());
  for (const Edge& f : h.edges()) {
    by_label[f.label].push_back(&f);
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    for (const Edge* f : by_label[e.label]) {
      Vertex from = vertex(e.from, f->from);
      Vertex to = vertex(e.to, f->to);
      edges.push_back({from, to, e.label});
    }
  }
  out.graph = XDigraph(g.rank(), out.pairs.size(), std::move(edges), base);
  return out;
}

Subgroup intersect(const Subgroup& h, const Subgroup& k) {
  ProductGraph p = product(h.graph(), k.graph());
  return Subgroup::from_graph(core(p.graph, *p.graph.base()));
}

bool digraph_isomorphic(const XDigraph& g, const XDigraph& h) {
  if (g.rank() != h.rank() || g.vertex_count() != h.vertex_count() ||
      g.edge_count() != h.edge_count()) {
    return false;
  }
  if (g.vertex_count() == 0) {
    return true;
  }
  if (g.is_folded() != h.is_folded()) {
    return false;
  }
  if (!g.is_folded() || !connected(g)) {
    return Matcher(g, h).solve();
  }
  FoldedTable gt(g);
  FoldedTable ht(h);
  for (Vertex seed = 0; seed < h.vertex_count(); ++seed) {
    if (propagate_isomorphism(g, gt, h, ht, 0, seed)) {
      return true;
    }
  }
  return false;
}

bool based_isomorphic(const XDigraph& g, const XDigraph& h) {
  if (!g.base() || !h.base()) {
    throw Error(ErrorKind::invalid_argument, "based isomorphism needs base vertices");
  }
  if (g.rank() != h.rank() || g.vertex_count() != h.vertex_count() ||
      g.edge_count() != h.edge_count()) {
    return false;
  }
  if (g.is_folded() != h.is_folded()) {
    return false;
  }
  if (!g.is_folded() || !connected(g)) {
    return Matcher(g, h, std::pair{*g.base(), *h.base()}).solve();
  }
  return propagate_isomorphism(g, FoldedTable(g), h, FoldedTable(h), *g.base(), *h.base());
}

bool conjugate_subgroups(const Subgroup& h, const Subgroup& k) {
  return digraph_isomorphic(type_graph(h), type_graph(k));
}

std::vector<Word> spanning_tree_basis(const Subgroup& h) {
  const XDigraph& g = h.graph();
  auto tree = bfs_tree(g, h.table(), h.base());
  std::vector<Word> basis;
  for (const Edge& e : g.edges()) {
    const TreeStep& at_to = tree[e.to];
    const TreeStep& at_from = tree[e.from];
    bool tree_edge =
        (at_to.parent == static_cast<std::int64_t>(e.from) && at_to.letter == Letter(e.label, 1)) ||
        (at_from.parent == static_cast<std::int64_t>(e.to) &&
         at_from.letter == Letter(e.label, -1));
    if (tree_edge) {
      continue;
    }
    basis.push_back(path_from_root(tree, e.from) * Word{Letter(e.label, 1)} *
                    path_from_root(tree, e.to).inverse());
  }
  return basis;
}

Word tree_path_label(const Subgroup& h, Vertex v) {
  return path_from_root(bfs_tree(h.graph(), h.table(), h.base()), v);
}

bool has_cycle(const XDigraph& g) {
  detail::UnionFind uf(g.vertex_count());
  for (const Edge& e : g.edges()) {
    uf.unite(e.from, e.to);
  }
  std::vector<std::size_t> vertices(g.vertex_count(), 0);
  std::vector<std::size_t> edges(g.vertex_count(), 0);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    ++vertices[uf.find(v)];
  }
  for (const Edge& e : g.edges()) {
    ++edges[uf.find(e.from)];
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (vertices[v] > 0 && edges[v] >= vertices[v]) {
      return true;
    }
  }
  return false;
}

std::optional<CycleWitness> find_cycle(const XDigraph& g) {
  struct HalfEdge {
    Letter letter;
    Vertex to;
    std::size_t edge;
  };
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<HalfEdge>> adj(n);
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edges()[i];
    adj[e.from].push_back({Letter(e.label, 1), e.to, i});
    adj[e.to].push_back({Letter(e.label, -1), e.from, i});
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end(),
              [](const HalfEdge& a, const HalfEdge& b) { return a.letter < b.letter; });
  }

  std::vector<TreeStep> tree(n);
  std::vector<std::int64_t> parent_edge(n, kNone);
  std::vector<bool> seen(n, false);
  for (Vertex root = 0; root < n; ++root) {
    if (seen[root]) {
      continue;
    }
    seen[root] = true;
    std::vector<std::pair<Vertex, std::size_t>> stack{{root, 0}};
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next == adj[v].size()) {
        stack.pop_back();
        continue;
      }
      const HalfEdge he = adj[v][next++];
      if (static_cast<std::int64_t>(he.edge) == parent_edge[v]) {
        continue;
      }
      if (!seen[he.to]) {
        seen[he.to] = true;
        tree[he.to] = {static_cast<std::int64_t>(v), he.letter};
        parent_edge[he.to] = static_cast<std::int64_t>(he.edge);
        stack.emplace_back(he.to, 0);
        continue;
      }
      const Edge& e = g.edges()[he.edge];
      CycleWitness w;
      w.root = root;
      w.loop = path_from_root(tree, e.from) * Word{Letter(e.label, 1)} *
               path_from_root(tree, e.to).inverse();
      return w;
    }
  }
  return std::nullopt;
}

std::optional<Word> conjugate_into(const Subgroup& h, const Word& w) {
  check_in_alphabet(w.letters(), h.rank());
  CyclicReduction cr = cyclic_reduce(w);
  if (cr.core.empty()) {
    return Word();
  }
  auto tree = bfs_tree(h.graph(), h.table(), h.base());
  for (Vertex u = 0; u < h.graph().vertex_count(); ++u) {
    auto end = h.table().trace(u, cr.core.letters());
    if (end && *end == u) {
      // x·core·x⁻¹ ∈ H and w = c·core·c⁻¹, so (x·c⁻¹)·w·(x·c⁻¹)⁻¹ ∈ H.
      return path_from_root(tree, u) * cr.conjugator.inverse();
    }
  }
  return std::nullopt;
}

// --- Text formats -----------------------------------------------------------

std::string format_graph(const XDigraph& g, const Alphabet& alphabet) {
  if (alphabet.rank() != g.rank() || !alphabet.single_char()) {
    throw Error(ErrorKind::alphabet_mismatch, "graph alphabet does not match");
  }
  std::ostringstream out;
  out << "v " << g.vertex_count() << '\n';
  if (g.base()) {
    out << "base " << *g.base() << '\n';
  }
  for (const Edge& e : g.edges()) {
    out << "e " << e.from << ' ' << e.to << ' ' << alphabet.symbol(e.label) << '\n';
  }
  return out.str();
}

XDigraph parse_graph(std::string_view text, const Alphabet& alphabet) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<std::size_t> count;
  std::optional<Vertex> base;
  std::vector<Edge> edges;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::parse, "graph line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag) || tag[0] == '#') {
      continue;
    }
    if (tag == "v") {
      std::size_t c = 0;
      if (count || !(fields >> c)) {
        fail("expected a single 'v <count>'");
      }
      count = c;
    } else if (tag == "base") {
      Vertex b = 0;
      if (base || !(fields >> b)) {
        fail("expected a single 'base <idx>'");
      }
      base = b;
    } else if (tag == "e") {
      Vertex from = 0;
      Vertex to = 0;
      std::string label;
      if (!(fields >> from >> to >> label)) {
        fail("expected 'e <from> <to> <gen>'");
      }
      auto gen = alphabet.find(label);
      if (!gen) {
        throw Error(ErrorKind::unknown_symbol,
                    "graph line " + std::to_string(line_no) + ": unknown generator '" + label + "'");
      }
      edges.push_back({from, to, *gen});
    } else {
      fail("unknown record '" + tag + "'");
    }
    std::string extra;
    if (fields >> extra) {
      fail("trailing token '" + extra + "'");
    }
  }
  if (!count) {
    throw Error(ErrorKind::parse, "graph is missing 'v <count>'");
  }
  return XDigraph(alphabet.rank(), *count, std::move(edges), base);
}

std::string format_dot(const XDigraph& g, const Alphabet& alphabet) {
  std::ostringstream out;
  out << "digraph G {\n";
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    out << "  n" << v << " [shape=" << (g.base() == v ? "doublecircle" : "circle") << "];\n";
  }
  for (const Edge& e : g.edges()) {
    out << "  n" << e.from << " -> n" << e.to << " [label=\"" << alphabet.symbol(e.label)
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::vector<Word> parse_generators(std::string_view text, const Alphabet& alphabet) {
  std::istringstream in{std::string(text)};
  std::vector<Word> gens;
  std::string token;
  while (in >> token) {
    gens.push_back(parse_word(token, alphabet));
  }
  return gens;
}

}  // namespace ellgraph
