// Serial reference vs OpenMP build of each kernel.

#include <benchmark/benchmark.h>

#include <random>

#include "ellgraph/kernels.hpp"

using namespace ellgraph;

namespace {

Word random_word(std::mt19937& rng, std::size_t rank, std::size_t len) {
  std::uniform_int_distribution<std::size_t> code(0, 2 * rank - 1);
  std::vector<Letter> ls;
  while (ls.size() < len) {
    Letter l = Letter::from_code(code(rng));
    if (!ls.empty() && ls.back() == l.inverse()) {
      continue;
    }
    ls.push_back(l);
  }
  return free_reduce(ls);
}

// A tuple that no automorphism shortens, so the scan covers every entry.
WordTuple minimal_tuple(std::size_t rank) {
  std::mt19937 rng(7);
  WordTuple t{{CyclicWord(random_word(rng, rank, 40)), CyclicWord(random_word(rng, rank, 40))}};
  return minimize_tuple(t, rank).minimal;
}

template <auto Kernel>
void length_decrease(benchmark::State& state) {
  std::size_t rank = static_cast<std::size_t>(state.range(0));
  auto auts = enumerate_whitehead(rank);
  WordTuple t = minimal_tuple(rank);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Kernel(auts, t));
  }
}

template <auto Kernel>
void closure(benchmark::State& state) {
  std::size_t rank = static_cast<std::size_t>(state.range(0));
  auto auts = enumerate_whitehead(rank);
  auto perms = enumerate_relabelings(rank);
  auts.insert(auts.end(), perms.begin(), perms.end());
  WordTuple t = minimal_tuple(rank);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Kernel(t, auts));
  }
}

template <auto Kernel>
void product_cycle(benchmark::State& state) {
  std::mt19937 rng(11);
  std::vector<XDigraph> left;
  std::vector<XDigraph> right;
  for (int i = 0; i < 4; ++i) {
    std::vector<Word> g{random_word(rng, 2, state.range(0)), random_word(rng, 2, state.range(0))};
    std::vector<Word> h{random_word(rng, 2, state.range(0)), random_word(rng, 2, state.range(0))};
    left.push_back(type_graph(build_subgroup(g, 2)));
    right.push_back(type_graph(build_subgroup(h, 2)));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(Kernel(left, right));
  }
}

}  // namespace

BENCHMARK(length_decrease<serial::first_length_decrease>)->Arg(3)->Arg(4)->Arg(5);
BENCHMARK(length_decrease<parallel::first_length_decrease>)->Arg(3)->Arg(4)->Arg(5);
BENCHMARK(closure<serial::equal_length_closure>)->Arg(3)->Arg(4);
BENCHMARK(closure<parallel::equal_length_closure>)->Arg(3)->Arg(4);
BENCHMARK(product_cycle<serial::first_product_cycle>)->Arg(50)->Arg(200);
BENCHMARK(product_cycle<parallel::first_product_cycle>)->Arg(50)->Arg(200);

BENCHMARK_MAIN();
