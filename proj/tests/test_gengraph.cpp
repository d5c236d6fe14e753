#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "hrg/gengraph.hpp"
#include "hrg/geom.hpp"
#include "hrg/graph.hpp"
#include "hrg/limits.hpp"
#include "hrg/params.hpp"
#include "hrg/rng.hpp"

using namespace hrg;

namespace {

bool same_adjacency(const Graph& a, const Graph& b) {
  if (a.num_vertices() != b.num_vertices()) return false;
  for (std::uint32_t v = 0; v < a.num_vertices(); ++v) {
    auto na = a.neighbors(v);
    auto nb = b.neighbors(v);
    if (!std::equal(na.begin(), na.end(), nb.begin(), nb.end())) return false;
  }
  return true;
}

void check_adjacency_invariants(const Graph& g) {
  for (std::uint32_t v = 0; v < g.num_vertices(); ++v) {
    auto nbrs = g.neighbors(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      REQUIRE(nbrs[i] != v);                     // loop-free
      if (i) REQUIRE(nbrs[i] > nbrs[i - 1]);     // strictly sorted
      REQUIRE(g.has_edge(nbrs[i], v));           // symmetric
    }
  }
}

}  // namespace

TEST_CASE("kpkvb: small cases") {
  auto p1 = derive_params(0.8, 1.0, 1);
  const Graph g1 = generate_kpkvb(p1, 5);
  CHECK(g1.num_vertices() == 1);
  CHECK(g1.num_edges() == 0);

  auto p2 = derive_params(0.8, 1.0, 2);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Graph g2 = generate_kpkvb(p2, seed);
    REQUIRE(g2.num_vertices() == 2);
    const bool expect =
        is_connected_polar(g2.polar_coords()[0], g2.polar_coords()[1], p2.R);
    CHECK((g2.num_edges() == 1) == expect);
  }
}

TEST_CASE("determinism: bit-exact across thread counts and pruning") {
  auto params = derive_params(0.8, 1.0, 3000);
  GenOptions one{.use_pruning = true, .threads = 1};
  GenOptions two{.use_pruning = true, .threads = 2};
  GenOptions four{.use_pruning = true, .threads = 4};
  const Graph g1 = generate_kpkvb(params, 99, one);
  const Graph g2 = generate_kpkvb(params, 99, two);
  const Graph g4 = generate_kpkvb(params, 99, four);
  CHECK(same_adjacency(g1, g2));
  CHECK(same_adjacency(g1, g4));
  for (std::uint32_t v = 0; v < g1.num_vertices(); ++v) {
    CHECK(g1.polar_coords()[v].r == g2.polar_coords()[v].r);
    CHECK(g1.polar_coords()[v].theta == g4.polar_coords()[v].theta);
  }
  check_adjacency_invariants(g1);
}

TEST_CASE("edge-rule audit: pruned scan equals the naive oracle") {
  GenOptions pruned{.use_pruning = true, .threads = 1};
  GenOptions naive{.use_pruning = false, .threads = 1};
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto params = derive_params(0.6 + 0.3 * (seed % 3), 0.9, 700 + 450 * seed);
    const Graph a = generate_kpkvb(params, seed, pruned);
    const Graph b = generate_kpkvb(params, seed, naive);
    REQUIRE(same_adjacency(a, b));
    check_adjacency_invariants(a);
  }
}

TEST_CASE("edge-rule audit: independent re-scan of the connection rule") {
  auto params = derive_params(0.9, 1.5, 800);
  const Graph g = generate_kpkvb(params, 7);
  std::size_t edges = 0;
  for (std::uint32_t u = 0; u < g.num_vertices(); ++u) {
    for (std::uint32_t v = u + 1; v < g.num_vertices(); ++v) {
      const bool want = is_connected_polar(g.polar_coords()[u], g.polar_coords()[v], params.R);
      REQUIRE(g.has_edge(u, v) == want);
      edges += want;
    }
  }
  CHECK(edges == g.num_edges());
}

TEST_CASE("poissonized: count statistics and N = 0") {
  auto params = derive_params(0.8, 1.0, 100);
  double sum = 0.0;
  const int seeds = 10000;
  for (int s = 0; s < seeds; ++s) {
    sum += static_cast<double>(generate_poissonized(params, s).num_vertices());
  }
  const double mean = sum / seeds;
  const double se = std::sqrt(100.0 / seeds);
  CHECK(std::fabs(mean - 100.0) < 3.0 * se);

  // a Poisson(1) draw hits zero within a few seeds
  auto tiny = derive_params(0.8, 0.5, 1);
  bool found_empty = false;
  for (std::uint64_t s = 0; s < 40 && !found_empty; ++s) {
    const Graph g = generate_poissonized(tiny, s);
    if (g.num_vertices() == 0) {
      found_empty = true;
      CHECK(g.num_edges() == 0);
      std::ostringstream os;
      write_edge_list(g, os);
      CHECK(os.str().rfind("# poissonized", 0) == 0);
    }
  }
  CHECK(found_empty);
}

TEST_CASE("poissonized mean degree matches kpkvb within MC error") {
  auto params = derive_params(0.8, 1.0, 4000);
  const int seeds = 12;
  double mean_k = 0.0, mean_p = 0.0, sq_k = 0.0, sq_p = 0.0;
  for (int s = 0; s < seeds; ++s) {
    const Graph gk = generate_kpkvb(params, 100 + s);
    const Graph gp = generate_poissonized(params, 200 + s);
    const double dk = 2.0 * gk.num_edges() / static_cast<double>(gk.num_vertices());
    const double dp = 2.0 * gp.num_edges() / static_cast<double>(gp.num_vertices());
    mean_k += dk;
    mean_p += dp;
    sq_k += dk * dk;
    sq_p += dp * dp;
  }
  mean_k /= seeds;
  mean_p /= seeds;
  const double var_k = (sq_k / seeds - mean_k * mean_k) * seeds / (seeds - 1.0);
  const double var_p = (sq_p / seeds - mean_p * mean_p) * seeds / (seeds - 1.0);
  const double se = std::sqrt((var_k + var_p) / seeds);
  CHECK(std::fabs(mean_k - mean_p) < 3.5 * se + 0.05 * mean_k);
}

TEST_CASE("box model: mass, edge rule, pruning audit") {
  GenOptions pruned{.use_pruning = true, .threads = 1};
  GenOptions naive{.use_pruning = false, .threads = 1};

  // total mass: E N = n (1 - e^{-alpha R})
  auto params = derive_params(1.0, 1.0, 100);
  const double mass = 100.0 * -std::expm1(-params.alpha * params.R);
  double sum = 0.0;
  const int seeds = 10000;
  for (int s = 0; s < seeds; ++s) {
    sum += static_cast<double>(generate_box(params, s).num_vertices());
  }
  CHECK(std::fabs(sum / seeds - mass) < 3.0 * std::sqrt(mass / seeds));

  // pruned equals naive
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto p = derive_params(0.7 + 0.2 * (seed % 3), 1.0, 600 + 300 * seed);
    const Graph a = generate_box(p, seed, pruned);
    const Graph b = generate_box(p, seed, naive);
    REQUIRE(same_adjacency(a, b));
  }

  // independent re-scan of the torus rule; coordinates inside the box
  auto p2 = derive_params(0.8, 2.0, 500);
  const Graph g = generate_box(p2, 3);
  const double circumference = M_PI * std::exp(p2.R / 2.0);
  for (std::uint32_t u = 0; u < g.num_vertices(); ++u) {
    const auto& pu = g.plane_coords()[u];
    REQUIRE(pu.y >= 0.0);
    REQUIRE(pu.y <= p2.R);
    REQUIRE(std::fabs(pu.x) <= circumference / 2.0);
    for (std::uint32_t v = u + 1; v < g.num_vertices(); ++v) {
      const auto& pv = g.plane_coords()[v];
      const bool want = torus_distance(pu.x, pv.x, circumference) <=
                        std::exp(0.5 * (pu.y + pv.y));
      REQUIRE(g.has_edge(u, v) == want);
    }
  }

  // two points at torus distance 0 are connected
  CHECK(torus_distance(0.3, 0.3, circumference) <= std::exp(0.0));
}

TEST_CASE("box model: conditional mean degree matches mu_box") {
  auto params = derive_params(0.8, 1.0, 2000);
  auto ctx = make_limit_context(0.8, 1.0);
  const double y_lo = 1.9, y_hi = 2.1;
  double deg_sum = 0.0;
  std::int64_t count = 0;
  for (std::uint64_t s = 0; s < 120; ++s) {
    const Graph g = generate_box(params, 4000 + s);
    for (std::uint32_t v = 0; v < g.num_vertices(); ++v) {
      const double y = g.plane_coords()[v].y;
      if (y >= y_lo && y <= y_hi) {
        deg_sum += static_cast<double>(g.degree(v));
        ++count;
      }
    }
  }
  REQUIRE(count > 3000);
  const double mean = deg_sum / static_cast<double>(count);
  const double want = mu_box(ctx, params.n, 2.0);
  // 5% band covers the height window width and Poisson noise
  CHECK(std::fabs(mean - want) < 0.05 * want);
}

TEST_CASE("typical neighborhood sampler") {
  // mean count = xi e^{y0/2}
  const double alpha = 0.8, nu = 1.0;
  const double xi = 4.0 * alpha * nu / (M_PI * (2.0 * alpha - 1.0));
  const double y0 = 2.0 * std::log(5.0 / xi);  // mean 5
  double sum = 0.0;
  const int draws = 100000;
  for (int s = 0; s < draws; ++s) {
    sum += static_cast<double>(sample_typical_neighborhood(alpha, nu, y0, s).neighbors.size());
  }
  CHECK(std::fabs(sum / draws - 5.0) < 3.0 * std::sqrt(5.0 / draws));

  // ball geometry: |x| <= e^{(y0+y)/2}, heights positive
  for (int s = 0; s < 300; ++s) {
    const auto nb = sample_typical_neighborhood(alpha, nu, 0.0, 7000 + s);
    for (const auto& p : nb.neighbors) {
      REQUIRE(p.y >= 0.0);
      REQUIRE(std::fabs(p.x) <= std::exp(0.5 * p.y));
    }
  }
}

TEST_CASE("degree sequence law at moderate size") {
  auto params = derive_params(0.8, 1.0, 3000);
  auto ctx = make_limit_context(0.8, 1.0);
  const int seeds = 30;
  std::vector<double> frac(7, 0.0);
  std::vector<double> fracsq(7, 0.0);
  for (int s = 0; s < seeds; ++s) {
    const Graph g = generate_kpkvb(params, 500 + s);
    std::vector<double> f(7, 0.0);
    for (std::uint32_t v = 0; v < g.num_vertices(); ++v) {
      const std::size_t d = g.degree(v);
      if (d < 7) f[d] += 1.0;
    }
    for (int k = 0; k < 7; ++k) {
      f[k] /= static_cast<double>(g.num_vertices());
      frac[k] += f[k];
      fracsq[k] += f[k] * f[k];
    }
  }
  for (int k = 1; k < 7; ++k) {
    const double mean = frac[k] / seeds;
    const double var = (fracsq[k] / seeds - mean * mean) * seeds / (seeds - 1.0);
    const double se = std::sqrt(std::max(var, 1e-12) / seeds);
    // 4 SE + 2% finite-size allowance at n = 3000
    CHECK(std::fabs(mean - degree_pmf(ctx, k)) < 4.0 * se + 0.02 * degree_pmf(ctx, k));
  }
}

TEST_CASE("resource budget is enforced") {
  auto params = derive_params(0.8, 1.0, 1000);
  GenOptions opt;
  opt.max_vertices = 100;
  CHECK_THROWS_AS(generate_kpkvb(params, 1, opt), ResourceError);
}

TEST_CASE("edge list and coordinate serialization") {
  auto params = derive_params(0.8, 1.0, 10);
  const Graph g = generate_kpkvb(params, 42);
  std::ostringstream edges1, edges2, coords;
  write_edge_list(g, edges1);
  write_edge_list(g, edges2);
  CHECK(edges1.str() == edges2.str());

  std::istringstream in(edges1.str());
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("# kpkvb 0.8 1 10 ", 0) == 0);
  CHECK(header.find("42") != std::string::npos);
  std::uint32_t u, v;
  std::uint64_t last = 0;
  while (in >> u >> v) {
    CHECK(u < v);
    const std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | v;
    CHECK(key > last);
    last = key;
  }

  write_coordinates_csv(g, coords);
  CHECK(coords.str().rfind("vertex,r_or_x,theta_or_y\n", 0) == 0);
  std::size_t lines = 0;
  for (char c : coords.str()) lines += c == '\n';
  CHECK(lines == g.num_vertices() + 1);
}
