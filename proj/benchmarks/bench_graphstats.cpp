#include <benchmark/benchmark.h>

#include "hrg/gengraph.hpp"
#include "hrg/graphstats.hpp"
#include "hrg/params.hpp"

namespace {

void BM_ClusteringReport(benchmark::State& state) {
  const auto n = state.range(0);
  const auto params = hrg::derive_params(0.8, 1.0, n);
  const hrg::Graph g = hrg::generate_kpkvb(params, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hrg::clustering_report(g).c_global);
  }
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_FigRep(benchmark::State& state) {
  // one figure-experiment repetition: generate + full clustering report
  const auto params = hrg::derive_params(0.8, 1.0, 10000);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const hrg::Graph g = hrg::generate_kpkvb(params, seed++);
    benchmark::DoNotOptimize(hrg::clustering_report(g).c_global);
  }
}

}  // namespace

BENCHMARK(BM_ClusteringReport)->Unit(benchmark::kMillisecond)->Arg(1000)->Arg(10000)->Arg(100000);
BENCHMARK(BM_FigRep)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
