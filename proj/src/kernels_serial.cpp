#include <deque>
#include <unordered_set>

#include "ellgraph/kernels.hpp"

namespace ellgraph::serial {

std::optional<std::size_t> first_length_decrease(std::span<const WhiteheadAut> auts,
                                                 const WordTuple& ws) {
  const std::size_t length = ws.total_length();
  for (std::size_t i = 0; i < auts.size(); ++i) {
    if (apply(auts[i], ws).total_length() < length) {
      return i;
    }
  }
  return std::nullopt;
}

std::vector<WordTuple> equal_length_closure(const WordTuple& start,
                                            std::span<const WhiteheadAut> auts) {
  const std::size_t length = start.total_length();
  std::unordered_set<WordTuple> visited{start};
  std::vector<WordTuple> order{start};
  std::deque<WordTuple> queue{start};
  while (!queue.empty()) {
    WordTuple cur = std::move(queue.front());
    queue.pop_front();
    for (const WhiteheadAut& t : auts) {
      WordTuple img = apply(t, cur);
      if (img.total_length() == length && visited.insert(img).second) {
        order.push_back(img);
        queue.push_back(std::move(img));
      }
    }
  }
  return order;
}

std::optional<ProductCycle> first_product_cycle(std::span<const XDigraph> left,
                                                std::span<const XDigraph> right) {
  for (std::size_t i = 0; i < left.size() && i < right.size(); ++i) {
    ProductGraph p = product(left[i], right[i]);
    if (auto c = find_cycle(p.graph)) {
      auto [u, v] = p.pairs[c->root];
      return ProductCycle{i, u, v, std::move(c->loop)};
    }
  }
  return std::nullopt;
}

}  // namespace ellgraph::serial
