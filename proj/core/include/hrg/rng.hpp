#pragma once

#include <cstdint>

namespace hrg {

/// Splittable counter-based generator. A draw is a strong 64-bit mix of
/// (seed, stream, counter), so any (seed, stream) pair yields an independent
/// substream whose values do not depend on evaluation order or thread layout.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();

  /// Uniform in [0, 1).
  double next_double();
  /// Uniform in (0, 1].
  double next_double_open0();
  double uniform(double lo, double hi);
  /// Exponential with the given rate.
  double exponential(double rate);
  /// Exact Poisson draw; inversion for small means, PTRD for large.
  std::int64_t poisson(double mean);

  /// Stand-alone mix of (seed, stream), for deriving child seeds.
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream);

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

}  // namespace hrg
