#include <benchmark/benchmark.h>

#include "hrg/limits.hpp"
#include "hrg/specfun.hpp"

namespace {

void BM_UpperIncGamma(benchmark::State& state) {
  double a = -4.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hrg::upper_inc_gamma(a, 1.7));
    a = a > 4.0 ? -4.0 : a + 0.1;
  }
}

void BM_LowerIncBeta(benchmark::State& state) {
  double x = 0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hrg::lower_inc_beta(x, 1.6, -3.4));
    x = x > 0.99 ? 0.05 : x + 0.01;
  }
}

void BM_MeijerG(benchmark::State& state) {
  const auto ctx = hrg::make_limit_context(0.8, 1.0);
  double k = 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hrg::meijer_g_3023(0.8, -6.0 * 0.8 + k + 2.0, ctx.xi));
    k = k > 24.0 ? 2.0 : k + 1.0;
  }
}

void BM_GammaK(benchmark::State& state) {
  const auto ctx = hrg::make_limit_context(0.8, 1.0);
  std::int64_t k = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hrg::gamma_k(ctx, k));
  }
}

void BM_GammaKOracle(benchmark::State& state) {
  const auto ctx = hrg::make_limit_context(0.8, 1.0);
  hrg::QuadSpec spec;
  std::int64_t k = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hrg::gamma_k_oracle(ctx, k, spec));
  }
}

void BM_PyOracle(benchmark::State& state) {
  const auto ctx = hrg::make_limit_context(0.8, 1.0);
  hrg::QuadSpec spec;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hrg::p_y_oracle(ctx, 2.0, spec));
  }
}

}  // namespace

BENCHMARK(BM_UpperIncGamma);
BENCHMARK(BM_LowerIncBeta);
BENCHMARK(BM_MeijerG)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_GammaK)->Arg(5)->Arg(25)->Arg(1000)->Arg(1000000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_GammaKOracle)->Arg(5)->Arg(25)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PyOracle)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
