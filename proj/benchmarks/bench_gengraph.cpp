#include <benchmark/benchmark.h>

#include "hrg/gengraph.hpp"
#include "hrg/params.hpp"

namespace {

void BM_GenerateKpkvbPruned(benchmark::State& state) {
  const auto n = state.range(0);
  const auto params = hrg::derive_params(0.8, 1.0, n);
  hrg::GenOptions opt;
  opt.use_pruning = true;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hrg::generate_kpkvb(params, seed++, opt).num_edges());
  }
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_GenerateKpkvbNaive(benchmark::State& state) {
  const auto n = state.range(0);
  const auto params = hrg::derive_params(0.8, 1.0, n);
  hrg::GenOptions opt;
  opt.use_pruning = false;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hrg::generate_kpkvb(params, seed++, opt).num_edges());
  }
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_GenerateBox(benchmark::State& state) {
  const auto n = state.range(0);
  const auto params = hrg::derive_params(0.8, 1.0, n);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hrg::generate_box(params, seed++).num_edges());
  }
  state.SetItemsProcessed(state.iterations() * n);
}

}  // namespace

BENCHMARK(BM_GenerateKpkvbPruned)->Unit(benchmark::kMillisecond)->Arg(1000)->Arg(10000)->Arg(100000);
BENCHMARK(BM_GenerateKpkvbNaive)->Unit(benchmark::kMillisecond)->Arg(1000)->Arg(4000);
BENCHMARK(BM_GenerateBox)->Unit(benchmark::kMillisecond)->Arg(10000);

BENCHMARK_MAIN();
