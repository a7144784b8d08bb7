#include <benchmark/benchmark.h>

#include "hyperlet/hardlab.hpp"
#include "hyperlet/sampler.hpp"

using namespace hyperlet;

namespace {

struct Fixture {
  explicit Fixture(unsigned k)
      : h(powerlaw_hypergraph(2000, 1000, 3.0, 20, 3)),
        split(choose_split_refined(h).split),
        cs(build_counters(h, split, k, random_coloring(h.vertex_count(), k, 4))),
        gen(cs, split) {}
  Hypergraph h;
  AlphaSplit split;
  CounterSet cs;
  Generators gen;
};

void BM_SampleTreelet(benchmark::State& state) {
  Fixture f(static_cast<unsigned>(state.range(0)));
  Rng rng(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_treelet(f.gen, rng).vertices.size());
  }
}

void BM_Estimate(benchmark::State& state) {
  Fixture f(static_cast<unsigned>(state.range(0)));
  EstimateOptions opts;
  opts.samples = 10000;
  opts.ie_extract = state.range(1) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_counts(f.gen, opts, 6).types.size());
  }
}

}  // namespace

BENCHMARK(BM_SampleTreelet)->DenseRange(3, 6);
BENCHMARK(BM_Estimate)->ArgsProduct({{3, 5}, {0, 1}})->Unit(benchmark::kMillisecond);
