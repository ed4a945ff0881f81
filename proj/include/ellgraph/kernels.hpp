#pragma once

// Hot loops of the library, each in two interchangeable builds: a plain
// serial reference and an OpenMP version. Both must return identical results;
// tests/test_kernels.cpp holds them to that, bench/ compares their speed.

#include <optional>
#include <span>
#include <vector>

#include "ellgraph/stallings.hpp"
#include "ellgraph/whitehead.hpp"

namespace ellgraph {

/// Cycle found in left[pair_index] × right[pair_index] at vertex (left, right).
struct ProductCycle {
  std::size_t pair_index = 0;
  Vertex left = 0;
  Vertex right = 0;
  Word loop;
};

namespace serial {

/// Index of the first automorphism that strictly shortens the tuple.
std::optional<std::size_t> first_length_decrease(std::span<const WhiteheadAut> auts,
                                                 const WordTuple& ws);

/// Breadth-first closure of `start` under the automorphisms that keep the
/// total length; discovery order.
std::vector<WordTuple> equal_length_closure(const WordTuple& start,
                                            std::span<const WhiteheadAut> auts);

/// First index i (in order) whose product left[i] × right[i] has a cycle.
std::optional<ProductCycle> first_product_cycle(std::span<const XDigraph> left,
                                                std::span<const XDigraph> right);

}  // namespace serial

namespace parallel {

std::optional<std::size_t> first_length_decrease(std::span<const WhiteheadAut> auts,
                                                 const WordTuple& ws);

std::vector<WordTuple> equal_length_closure(const WordTuple& start,
                                            std::span<const WhiteheadAut> auts);

std::optional<ProductCycle> first_product_cycle(std::span<const XDigraph> left,
                                                std::span<const XDigraph> right);

}  // namespace parallel

}  // namespace ellgraph
