#include <atomic>
#include <unordered_set>

#include "ellgraph/kernels.hpp"

namespace ellgraph::parallel {

namespace {

void atomic_min(std::atomic<std::size_t>& target, std::size_t value) {
  std::size_t cur = target.load(std::memory_order_relaxed);
  while (value < cur && !target.compare_exchange_weak(cur, value, std::memory_order_relaxed)) {
  }
}

}  // namespace

std::optional<std::size_t> first_length_decrease(std::span<const WhiteheadAut> auts,
                                                 const WordTuple& ws) {
  const std::size_t length = ws.total_length();
  const auto n = static_cast<std::int64_t>(auts.size());
  std::atomic<std::size_t> best{auts.size()};
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (idx >= best.load(std::memory_order_relaxed)) {
      continue;
    }
    if (apply(auts[idx], ws).total_length() < length) {
      atomic_min(best, idx);
    }
  }
  if (best.load() == auts.size()) {
    return std::nullopt;
  }
  return best.load();
}

// Level-synchronous: images of one frontier are computed in parallel, then
// merged in (frontier order, automorphism order), which is exactly the order
// a FIFO queue would discover them in.
std::vector<WordTuple> equal_length_closure(const WordTuple& start,
                                            std::span<const WhiteheadAut> auts) {
  const std::size_t length = start.total_length();
  std::unordered_set<WordTuple> visited{start};
  std::vector<WordTuple> order{start};
  std::vector<WordTuple> frontier{start};
  while (!frontier.empty()) {
    std::vector<std::vector<WordTuple>> found(frontier.size());
    const auto n = static_cast<std::int64_t>(frontier.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) {
      auto& out = found[static_cast<std::size_t>(i)];
      for (const WhiteheadAut& t : auts) {
        WordTuple img = apply(t, frontier[static_cast<std::size_t>(i)]);
        if (img.total_length() == length) {
          out.push_back(std::move(img));
        }
      }
    }
    std::vector<WordTuple> next;
    for (auto& list : found) {
      for (WordTuple& img : list) {
        if (visited.insert(img).second) {
          order.push_back(img);
          next.push_back(std::move(img));
        }
      }
    }
    frontier = std::move(next);
  }
  return order;
}

std::optional<ProductCycle> first_product_cycle(std::span<const XDigraph> left,
                                                std::span<const XDigraph> right) {
  const std::size_t count = std::min(left.size(), right.size());
  std::vector<std::optional<ProductCycle>> results(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    ProductGraph p = product(left[idx], right[idx]);
    if (auto c = find_cycle(p.graph)) {
      auto [u, v] = p.pairs[c->root];
      results[idx] = ProductCycle{idx, u, v, std::move(c->loop)};
    }
  }
  for (auto& r : results) {
    if (r) {
      return std::move(r);
    }
  }
  return std::nullopt;
}

}  // namespace ellgraph::parallel
