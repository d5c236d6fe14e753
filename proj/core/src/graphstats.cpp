#include "hrg/graphstats.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "hrg/kahan.hpp"

namespace hrg {
namespace {

std::size_t sorted_intersection_count(std::span<const std::uint32_t> a,
                                      std::span<const std::uint32_t> b) {
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

/// Per-vertex triangle counts via sorted-adjacency intersections. Hub
/// vertices (deg > sqrt(2m)) are probed through a membership bitmap instead
/// of merging their full lists.
std::vector<std::int64_t> triangle_counts(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::int64_t> tri(n, 0);
  const std::size_t m = g.num_edges();
  const std::size_t hub_threshold =
      std::max<std::size_t>(16, static_cast<std::size_t>(std::sqrt(2.0 * m)) + 1);

  std::vector<bool> is_hub(n, false);
  std::vector<std::vector<bool>> hub_mask;
  std::vector<std::size_t> hub_index(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (g.degree(static_cast<std::uint32_t>(v)) > hub_threshold) {
      is_hub[v] = true;
      hub_index[v] = hub_mask.size();
      std::vector<bool> mask(n, false);
      for (std::uint32_t w : g.neighbors(static_cast<std::uint32_t>(v))) mask[w] = true;
      hub_mask.push_back(std::move(mask));
    }
  }

  auto count_common = [&](std::uint32_t u, std::uint32_t v, auto&& per_common) {
    auto nu = g.neighbors(u);
    auto nv = g.neighbors(v);
    if (is_hub[u] && nu.size() > nv.size()) {
      const auto& mask = hub_mask[hub_index[u]];
      for (std::uint32_t w : nv) {
        if (mask[w]) per_common(w);
      }
      return;
    }
    if (is_hub[v] && nv.size() > nu.size()) {
      const auto& mask = hub_mask[hub_index[v]];
      for (std::uint32_t w : nu) {
        if (mask[w]) per_common(w);
      }
      return;
    }
    auto ia = nu.begin();
    auto ib = nv.begin();
    while (ia != nu.end() && ib != nv.end()) {
      if (*ia < *ib) {
        ++ia;
      } else if (*ib < *ia) {
        ++ib;
      } else {
        per_common(*ia);
        ++ia;
        ++ib;
      }
    }
  };

  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v : g.neighbors(u)) {
      if (v <= u) continue;
      count_common(u, v, [&](std::uint32_t w) { ++tri[w]; });
    }
  }
  return tri;
}

}  // namespace

double local_clustering(const Graph& g, std::uint32_t v) {
  if (v >= g.num_vertices()) {
    throw std::out_of_range("local_clustering: vertex index out of range");
  }
  const auto nbrs = g.neighbors(v);
  const std::size_t d = nbrs.size();
  if (d < 2) return 0.0;
  std::size_t among = 0;
  for (std::uint32_t u : nbrs) {
    among += sorted_intersection_count(nbrs, g.neighbors(u));
  }
  among /= 2;  // every neighbor edge seen from both ends
  return static_cast<double>(among) / (0.5 * static_cast<double>(d) * (d - 1));
}

ClusteringReport clustering_report(const Graph& g) {
  ClusteringReport report;
  const std::size_t n = g.num_vertices();
  if (n == 0) return report;

  report.triangles_per_vertex = triangle_counts(g);

  std::map<std::int64_t, KahanSum> c_sums;
  KahanSum global;
  for (std::uint32_t v = 0; v < n; ++v) {
    const std::int64_t d = static_cast<std::int64_t>(g.degree(v));
    ++report.degree_counts[d];
    double cv = 0.0;
    if (d >= 2) {
      cv = static_cast<double>(report.triangles_per_vertex[v]) /
           (0.5 * static_cast<double>(d) * static_cast<double>(d - 1));
    }
    c_sums[d].add(cv);
    global.add(cv);
  }
  report.c_global = global.value() / static_cast<double>(n);
  for (const auto& [k, count] : report.degree_counts) {
    report.c_of_k[k] = c_sums[k].value() / static_cast<double>(count);
  }
  return report;
}

void write_clustering_csv(const ClusteringReport& report, std::ostream& os) {
  os << "k,N_k,c_k_mean\n";
  for (const auto& [k, count] : report.degree_counts) {
    os << k << ',' << count << ',' << report.c_of_k.at(k) << '\n';
  }
  os << "# c_global=" << report.c_global << '\n';
}

}  // namespace hrg
