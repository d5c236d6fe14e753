#include "hrg/rng.hpp"

#include <cmath>

namespace hrg {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Stafford variant 13 of the splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : base_(mix64(seed + kGolden) ^ mix64(stream * 0xda942042e4dd58b5ULL + kGolden)) {}

std::uint64_t CounterRng::mix(std::uint64_t seed, std::uint64_t stream) {
  return mix64(mix64(seed + kGolden) ^ mix64(stream * 0xda942042e4dd58b5ULL + kGolden));
}

std::uint64_t CounterRng::next_u64() {
  counter_ += kGolden;
  return mix64(base_ + counter_);
}

double CounterRng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_double_open0() {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double CounterRng::uniform(double lo, double hi) {
  return lo + (hi - lo) * next_double();
}

double CounterRng::exponential(double rate) {
  return -std::log(next_double_open0()) / rate;
}

std::int64_t CounterRng::poisson(double mean) {
  if (mean <= 0.0) return 0;
  if (mean < 12.0) {
    // multiplication method
    const double threshold = std::exp(-mean);
    std::int64_t k = 0;
    double prod = next_double_open0();
    while (prod > threshold) {
      ++k;
      prod *= next_double_open0();
    }
    return k;
  }
  // Hormann's PTRD transformed-rejection sampler.
  const double mu = mean;
  const double smu = std::sqrt(mu);
  const double b = 0.931 + 2.53 * smu;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mu = std::log(mu);
  for (;;) {
    double u;
    double v = next_double_open0();
    if (v <= 0.86 * vr) {
      u = v / vr - 0.43;
      return static_cast<std::int64_t>(
          std::floor((2.0 * a / (0.5 - std::fabs(u)) + b) * u + mu + 0.445));
    }
    if (v >= vr) {
      u = next_double_open0() - 0.5;
    } else {
      u = v / vr - 0.93;
      u = (u < 0 ? -0.5 : 0.5) - u;
      v = next_double_open0() * vr;
    }
    const double us = 0.5 - std::fabs(u);
    if (us < 0.013 && v > us) continue;
    const double k = std::floor((2.0 * a / us + b) * u + mu + 0.445);
    if (k < 0.0) continue;
    v = v * inv_alpha / (a / (us * us) + b);
    // exact-lgamma form of Hormann's acceptance test (unbiased for all k)
    if (std::log(v) <= k * log_mu - mu - std::lgamma(k + 1.0)) {
      return static_cast<std::int64_t>(k);
    }
  }
}

}  // namespace hrg
