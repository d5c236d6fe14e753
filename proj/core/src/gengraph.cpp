#include "hrg/gengraph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <thread>

#include "hrg/errors.hpp"
#include "hrg/geom.hpp"
#include "hrg/rng.hpp"

namespace hrg {
namespace {

constexpr std::uint64_t kCountStream = ~0ULL;

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

template <typename Fn>
void parallel_chunks(std::size_t n, int threads, Fn fn) {
  threads = std::max(1, std::min<int>(threads, static_cast<int>(n ? n : 1)));
  if (threads == 1 || n < 2048) {
    fn(0, std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const std::size_t lo = std::min(n, t * chunk);
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([=] { fn(t, lo, hi); });
  }
  for (auto& th : pool) th.join();
}

/// Range-min (or range-max) sparse table over a doubled circular array.
class SparseTable {
 public:
  SparseTable(const std::vector<double>& values, bool maximize)
      : maximize_(maximize) {
    const std::size_t n = values.size();
    const int levels = n > 1 ? std::bit_width(n) : 1;
    table_.resize(levels);
    table_[0] = values;
    for (int lv = 1; lv < levels; ++lv) {
      const std::size_t half = std::size_t{1} << (lv - 1);
      table_[lv].resize(n - (std::size_t{2} << (lv - 1)) + 1);
      for (std::size_t i = 0; i + (std::size_t{1} << lv) <= n; ++i) {
        table_[lv][i] = pick(table_[lv - 1][i], table_[lv - 1][i + half]);
      }
    }
  }

  // extreme over [lo, hi] inclusive
  double query(std::size_t lo, std::size_t hi) const {
    const int lv = std::bit_width(hi - lo + 1) - 1;
    return pick(table_[lv][lo], table_[lv][hi + 1 - (std::size_t{1} << lv)]);
  }

 private:
  double pick(double a, double b) const { return maximize_ ? std::max(a, b) : std::min(a, b); }
  bool maximize_;
  std::vector<std::vector<double>> table_;
};

std::vector<std::vector<std::uint32_t>> adjacency_from_pairs(
    std::size_t n, std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>>& buffers) {
  std::vector<std::uint32_t> deg(n, 0);
  for (const auto& buf : buffers) {
    for (auto [u, v] : buf) {
      ++deg[u];
      ++deg[v];
    }
  }
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (std::size_t v = 0; v < n; ++v) adj[v].reserve(deg[v]);
  for (const auto& buf : buffers) {
    for (auto [u, v] : buf) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
  return adj;
}

std::vector<std::vector<std::uint32_t>> polar_edges(const std::vector<PolarPoint>& pts,
                                                    double R, const GenOptions& opt) {
  const std::size_t n = pts.size();
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> buffers;

  if (!opt.use_pruning) {
    const int threads = resolve_threads(opt.threads);
    buffers.resize(std::max(1, threads));
    parallel_chunks(n, threads, [&](int tid, std::size_t lo, std::size_t hi) {
      auto& buf = buffers[tid];
      for (std::size_t i = lo; i < hi; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (is_connected_polar(pts[i], pts[j], R)) {
            buf.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
          }
        }
      }
    });
    return adjacency_from_pairs(n, buffers);
  }

  // Geometric height bands, each sorted by angle. A vertex scans its own and
  // all higher (more central) bands inside the exact threshold angle computed
  // from its radius and the band's smallest possible radius; candidates are
  // verified with the exact connection rule. Within a band the true
  // connection threshold is below both endpoints' window thresholds, so the
  // idx ordering dedupes pairs without loss.
  std::vector<double> height_bounds{0.0};
  for (double h = 1.0; height_bounds.back() <= R; h *= 2.0) height_bounds.push_back(h);
  const std::size_t nbands = height_bounds.size() - 1;

  struct Band {
    double r_lo;
    std::vector<double> theta;
    std::vector<std::uint32_t> idx;
  };
  std::vector<Band> bands(nbands);
  auto band_of = [&](double r) {
    const double y = R - r;
    std::size_t b = 0;
    while (y >= height_bounds[b + 1]) ++b;
    return b;
  };
  {
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return pts[a].theta < pts[b].theta;
    });
    for (std::size_t b = 0; b < nbands; ++b) {
      bands[b].r_lo = std::max(0.0, R - height_bounds[b + 1]);
    }
    for (std::uint32_t i : order) {
      Band& band = bands[band_of(pts[i].r)];
      band.theta.push_back(pts[i].theta);
      band.idx.push_back(i);
    }
  }

  const int threads = resolve_threads(opt.threads);
  buffers.resize(std::max(1, threads));
  parallel_chunks(n, threads, [&](int tid, std::size_t lo, std::size_t hi) {
    auto& buf = buffers[tid];
    for (std::size_t s = lo; s < hi; ++s) {
      const auto i = static_cast<std::uint32_t>(s);
      const double ri = pts[i].r;
      const double ti = pts[i].theta;
      const std::size_t bi = band_of(ri);
      for (std::size_t b = bi; b < nbands; ++b) {
        const Band& band = bands[b];
        if (band.idx.empty()) continue;
        const bool same = b == bi;
        auto visit = [&](std::size_t c_lo, std::size_t c_hi) {
          for (std::size_t c = c_lo; c < c_hi; ++c) {
            const std::uint32_t j = band.idx[c];
            if (same && j <= i) continue;
            if (is_connected_polar(pts[i], pts[j], R)) buf.emplace_back(i, j);
          }
        };
        const double thr = max_connection_angle(ri, band.r_lo, R) + 4e-15;
        if (thr >= M_PI) {
          visit(0, band.theta.size());
          continue;
        }
        double w_lo = ti - thr;
        double w_hi = ti + thr;
        auto range = [&](double a, double bnd) {
          const auto first =
              std::lower_bound(band.theta.begin(), band.theta.end(), a) - band.theta.begin();
          const auto last =
              std::upper_bound(band.theta.begin(), band.theta.end(), bnd) - band.theta.begin();
          visit(static_cast<std::size_t>(first), static_cast<std::size_t>(last));
        };
        if (w_lo < -M_PI) {
          range(w_lo + 2.0 * M_PI, M_PI);
          range(-M_PI, w_hi);
        } else if (w_hi > M_PI) {
          range(w_lo, M_PI);
          range(-M_PI, w_hi - 2.0 * M_PI);
        } else {
          range(w_lo, w_hi);
        }
      }
    }
  });
  return adjacency_from_pairs(n, buffers);
}

std::vector<std::vector<std::uint32_t>> box_edges(const std::vector<PlanePoint>& pts,
                                                  double circumference, const GenOptions& opt) {
  const std::size_t n = pts.size();
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> buffers;
  const double half = circumference / 2.0;

  auto connected = [&](std::size_t i, std::size_t j) {
    return torus_distance(pts[i].x, pts[j].x, circumference) <=
           std::exp((pts[i].y + pts[j].y) / 2.0);
  };

  if (!opt.use_pruning) {
    const int threads = resolve_threads(opt.threads);
    buffers.resize(std::max(1, threads));
    parallel_chunks(n, threads, [&](int tid, std::size_t lo, std::size_t hi) {
      auto& buf = buffers[tid];
      for (std::size_t i = lo; i < hi; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (connected(i, j)) {
            buf.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
          }
        }
      }
    });
    return adjacency_from_pairs(n, buffers);
  }

  std::vector<std::uint32_t> ord(n);
  std::iota(ord.begin(), ord.end(), 0);
  std::sort(ord.begin(), ord.end(),
            [&](std::uint32_t a, std::uint32_t b) { return pts[a].x < pts[b].x; });

  const std::size_t m = 2 * n;
  std::vector<double> x_d(m), y_d(m);
  for (std::size_t t = 0; t < m; ++t) {
    const auto& p = pts[ord[t % n]];
    x_d[t] = p.x + (t >= n ? circumference : 0.0);
    y_d[t] = p.y;
  }
  SparseTable ymax(y_d, /*maximize=*/true);

  const int threads = resolve_threads(opt.threads);
  buffers.resize(std::max(1, threads));
  parallel_chunks(n, threads, [&](int tid, std::size_t lo, std::size_t hi) {
    auto& buf = buffers[tid];
    for (std::size_t s = lo; s < hi; ++s) {
      const std::uint32_t i = ord[s];
      const double yi = pts[i].y;
      const std::size_t limit =
          static_cast<std::size_t>(std::upper_bound(x_d.begin() + s + 1, x_d.begin() + s + n,
                                                    x_d[s] + half) -
                                   x_d.begin()) - 1;
      for (std::size_t t = s + 1; t <= limit; ++t) {
        const double gap = x_d[t] - x_d[s];
        if (gap > std::exp((yi + ymax.query(t, limit)) / 2.0)) break;
        const std::uint32_t j = ord[t % n];
        if (gap == half && i > j) continue;
        if (gap <= std::exp((yi + pts[j].y) / 2.0)) buf.emplace_back(i, j);
      }
    }
  });
  return adjacency_from_pairs(n, buffers);
}

std::vector<PolarPoint> sample_polar_points(const ModelParams& params, std::uint64_t seed,
                                            std::size_t count, int threads) {
  std::vector<PolarPoint> pts(count);
  parallel_chunks(count, threads, [&](int, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      CounterRng rng(seed, i);
      const double theta = M_PI * (1.0 - 2.0 * rng.next_double());  // (-pi, pi]
      const double r = sample_radius(params.alpha, params.R, rng.next_double());
      pts[i] = {r, theta};
    }
  });
  return pts;
}

Graph build_polar_graph(ModelTag tag, const ModelParams& params, std::uint64_t seed,
                        std::size_t count, const GenOptions& opt) {
  if (count > opt.max_vertices) {
    throw ResourceError("vertex count " + std::to_string(count) +
                        " exceeds the configured budget of " +
                        std::to_string(opt.max_vertices));
  }
  auto pts = sample_polar_points(params, seed, count, resolve_threads(opt.threads));
  auto adj = polar_edges(pts, params.R, opt);
  return Graph(tag, params.alpha, params.nu, params.n, params.R, seed, std::move(pts), {},
               std::move(adj));
}

}  // namespace

Graph generate_kpkvb(const ModelParams& params, std::uint64_t seed, const GenOptions& opt) {
  return build_polar_graph(ModelTag::kpkvb, params, seed,
                           static_cast<std::size_t>(params.n), opt);
}

Graph generate_poissonized(const ModelParams& params, std::uint64_t seed,
                           const GenOptions& opt) {
  CounterRng count_rng(seed, kCountStream);
  const std::int64_t count = count_rng.poisson(static_cast<double>(params.n));
  return build_polar_graph(ModelTag::poissonized, params, seed,
                           static_cast<std::size_t>(count), opt);
}

Graph generate_box(const ModelParams& params, std::uint64_t seed, const GenOptions& opt) {
  const double mass =
      static_cast<double>(params.n) * (-std::expm1(-params.alpha * params.R));
  CounterRng count_rng(seed, kCountStream);
  const std::int64_t count = count_rng.poisson(mass);
  if (static_cast<std::size_t>(count) > opt.max_vertices) {
    throw ResourceError("vertex count " + std::to_string(count) +
                        " exceeds the configured budget of " +
                        std::to_string(opt.max_vertices));
  }
  const double width = M_PI * std::exp(params.R / 2.0) / 2.0;  // box is (-width, width]
  std::vector<PlanePoint> pts(static_cast<std::size_t>(count));
  const double trunc = -std::expm1(-params.alpha * params.R);
  parallel_chunks(pts.size(), resolve_threads(opt.threads),
                  [&](int, std::size_t lo, std::size_t hi) {
                    for (std::size_t i = lo; i < hi; ++i) {
                      CounterRng rng(seed, i);
                      const double x = width * (1.0 - 2.0 * rng.next_double());
                      const double u = rng.next_double();
                      const double y = -std::log1p(-u * trunc) / params.alpha;
                      pts[i] = {x, y};
                    }
                  });
  auto adj = box_edges(pts, 2.0 * width, opt);
  return Graph(ModelTag::box, params.alpha, params.nu, params.n, params.R, seed, {},
               std::move(pts), std::move(adj));
}

TypicalNeighborhood sample_typical_neighborhood(double alpha, double nu, double y0,
                                                std::uint64_t seed) {
  const double xi = 4.0 * alpha * nu / (M_PI * (2.0 * alpha - 1.0));
  CounterRng count_rng(seed, kCountStream);
  const std::int64_t count = count_rng.poisson(xi * std::exp(y0 / 2.0));
  TypicalNeighborhood nb;
  nb.y0 = y0;
  nb.neighbors.resize(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < nb.neighbors.size(); ++i) {
    CounterRng rng(seed, i);
    const double y = rng.exponential(alpha - 0.5);
    const double halfw = std::exp((y0 + y) / 2.0);
    nb.neighbors[i] = {rng.uniform(-halfw, halfw), y};
  }
  return nb;
}

}  // namespace hrg
