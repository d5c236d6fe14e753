#pragma once

#include <cstdint>
#include <vector>

#include "hrg/graph.hpp"
#include "hrg/params.hpp"

namespace hrg {

struct GenOptions {
  /// Angular-window pruning (exact, conservative). The naive O(n^2) scan is
  /// kept as the test oracle.
  bool use_pruning = true;
  /// Memory budget: reject generation beyond this many vertices.
  std::size_t max_vertices = 50'000'000;
  /// 0 = all hardware threads.
  int threads = 1;
};

/// n iid points: theta uniform on (-pi,pi], r by the radial inverse CDF;
/// edges at hyperbolic distance <= R. Deterministic in (params, seed).
Graph generate_kpkvb(const ModelParams& params, std::uint64_t seed, const GenOptions& opt = {});

/// Same construction with Poisson(n) many points.
Graph generate_poissonized(const ModelParams& params, std::uint64_t seed,
                           const GenOptions& opt = {});

/// Poisson process with intensity (alpha nu / pi) e^{-alpha y} on the box,
/// left/right boundaries identified; edge iff torus |x-x'| <= e^{(y+y')/2}.
/// Vertex count is Poisson with the exact truncated mass n(1 - e^{-alpha R}).
Graph generate_box(const ModelParams& params, std::uint64_t seed, const GenOptions& opt = {});

/// The neighbors of a typical point at height y0 in the infinite model:
/// count Poisson(xi e^{y0/2}), heights Exp(alpha - 1/2), x uniform in the ball.
struct TypicalNeighborhood {
  double y0;
  std::vector<PlanePoint> neighbors;
};

TypicalNeighborhood sample_typical_neighborhood(double alpha, double nu, double y0,
                                                std::uint64_t seed);

}  // namespace hrg
