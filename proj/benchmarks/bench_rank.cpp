#include <benchmark/benchmark.h>

#include <random>

#include "semrank/graph.hpp"

namespace {

semrank::WeightedGraph dense_graph(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  semrank::WeightedGraph g(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) g.set_edge(i, j, u(rng));
  }
  return g;
}

void BM_WeightedRank(benchmark::State& state) {
  const auto g = dense_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(semrank::weighted_rank(g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_WeightedRank)->RangeMultiplier(2)->Range(16, 512)->Complexity();

void BM_PageRank(benchmark::State& state) {
  const auto g = dense_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(semrank::pagerank(g));
}
BENCHMARK(BM_PageRank)->Arg(64)->Arg(256);

}  // namespace
