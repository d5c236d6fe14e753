#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "hrg/rng.hpp"

using hrg::CounterRng;

TEST_CASE("substreams are deterministic and order-independent") {
  CounterRng a(42, 7);
  CounterRng b(42, 7);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  // interleaving other streams does not disturb a stream
  CounterRng c(42, 7);
  CounterRng noise(42, 8);
  CounterRng d(42, 7);
  for (int i = 0; i < 100; ++i) {
    (void)noise.next_u64();
    CHECK(c.next_u64() == d.next_u64());
  }

  CounterRng e(42, 9);
  CounterRng f(43, 9);
  int same = 0;
  CounterRng g(42, 9);
  for (int i = 0; i < 64; ++i) same += g.next_u64() == f.next_u64();
  CHECK(same == 0);
  (void)e;
}

TEST_CASE("uniform doubles look uniform") {
  CounterRng rng(1, 0);
  const int n = 100000;
  double sum = 0.0, sumsq = 0.0;
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
    sumsq += u * u;
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(mean == doctest::Approx(0.5).epsilon(0.01));
  CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(0.02));
  CHECK(lo < 1e-4);
  CHECK(hi > 1.0 - 1e-4);
}

TEST_CASE("exponential moments") {
  CounterRng rng(5, 0);
  const int n = 200000;
  const double rate = 0.3;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rng.exponential(rate);
  const double mean = sum / n;
  // SE of the mean is (1/rate)/sqrt(n)
  CHECK(std::fabs(mean - 1.0 / rate) < 3.0 * (1.0 / rate) / std::sqrt(n));
}

TEST_CASE("poisson mean and variance across both samplers") {
  for (double lambda : {0.3, 3.5, 11.0, 47.0, 1000.0}) {
    CounterRng rng(99, static_cast<std::uint64_t>(lambda * 100));
    const int n = lambda > 100 ? 20000 : 100000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double k = static_cast<double>(rng.poisson(lambda));
      sum += k;
      sumsq += k * k;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(std::fabs(mean - lambda) < 4.0 * std::sqrt(lambda / n));
    // Var[Po] = lambda; SE of sample variance ~ lambda sqrt(2/n + 1/(n lambda))
    const double se_var = lambda * std::sqrt(2.0 / n + 1.0 / (n * lambda));
    CHECK(std::fabs(var - lambda) < 5.0 * se_var);
  }
}

TEST_CASE("poisson edge cases") {
  CounterRng rng(1, 1);
  CHECK(rng.poisson(0.0) == 0);
  CHECK(rng.poisson(-1.0) == 0);
  // tiny mean: P(0) = e^-lambda
  CounterRng rng2(2, 1);
  const int n = 200000;
  int zeros = 0;
  for (int i = 0; i < n; ++i) zeros += rng2.poisson(0.05) == 0;
  CHECK(static_cast<double>(zeros) / n ==
        doctest::Approx(std::exp(-0.05)).epsilon(0.002));
}

TEST_CASE("mix is a pure function of (seed, stream)") {
  CHECK(CounterRng::mix(1, 2) == CounterRng::mix(1, 2));
  CHECK(CounterRng::mix(1, 2) != CounterRng::mix(2, 1));
  CHECK(CounterRng::mix(1, 2) != CounterRng::mix(1, 3));
}
