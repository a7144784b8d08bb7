#include <benchmark/benchmark.h>

#include "hyperlet/counters.hpp"
#include "hyperlet/hardlab.hpp"
#include "hyperlet/neighbor_weight.hpp"

using namespace hyperlet;

namespace {

// Four large edges of size n/4 over a bounded-degree background: the
// projection grows quadratically while the split stays linear.
Hypergraph controlled(std::size_t n) {
  ControlledParams p;
  p.n = n;
  p.m = n;
  p.alpha = 4;
  p.beta = 2;
  p.large_size = n / 4;
  p.small_fraction = 1.0 - 4.0 / static_cast<double>(n);
  return controlled_hypergraph(p, 1);
}

void BM_BuildNaive(benchmark::State& state) {
  auto h = controlled(static_cast<std::size_t>(state.range(0)));
  auto coloring = random_coloring(h.vertex_count(), 3, 2);
  BuildOptions opts;
  opts.keep_neighbor_sums = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_counters_naive(h, 3, coloring, opts).total());
  }
  state.counters["size"] = static_cast<double>(h.size());
}

void BM_BuildSplit(benchmark::State& state) {
  auto h = controlled(static_cast<std::size_t>(state.range(0)));
  auto coloring = random_coloring(h.vertex_count(), 3, 2);
  auto split = apply_split(h, 4);
  BuildOptions opts;
  opts.keep_neighbor_sums = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_counters(h, split, 3, coloring, opts).total());
  }
  state.counters["size"] = static_cast<double>(h.size());
}

void BM_NeighborWeightNaive(benchmark::State& state) {
  auto h = controlled(static_cast<std::size_t>(state.range(0)));
  std::vector<Count> w(h.vertex_count(), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nw_naive(gaifman(h), w));
  }
}

void BM_NeighborWeightSplit(benchmark::State& state) {
  auto h = controlled(static_cast<std::size_t>(state.range(0)));
  auto split = apply_split(h, 4);
  std::vector<Count> w(h.vertex_count(), 1);
  for (auto _ : state) {
    SplitNeighborWeights nw(split);
    benchmark::DoNotOptimize(nw.compute(w));
  }
}

}  // namespace

BENCHMARK(BM_BuildNaive)->RangeMultiplier(2)->Range(512, 8192)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildSplit)->RangeMultiplier(2)->Range(512, 8192)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NeighborWeightNaive)->RangeMultiplier(2)->Range(512, 8192)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NeighborWeightSplit)->RangeMultiplier(2)->Range(512, 8192)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
