#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "hrg/graph.hpp"

namespace hrg {

/// Degree counts N(k), the clustering coefficient c(G), the clustering
/// function c(k;G) (zero where N(k)=0) and per-vertex triangle counts.
struct ClusteringReport {
  std::map<std::int64_t, std::int64_t> degree_counts;
  double c_global = 0.0;
  std::map<std::int64_t, double> c_of_k;
  std::vector<std::int64_t> triangles_per_vertex;
};

/// c(v): edges among neighbors / C(deg,2); 0 when deg(v) < 2.
/// Throws std::out_of_range for an invalid vertex.
double local_clustering(const Graph& g, std::uint32_t v);

ClusteringReport clustering_report(const Graph& g);

/// CSV `k,N_k,c_k_mean` rows plus a `# c_global=<value>` footer.
void write_clustering_csv(const ClusteringReport& report, std::ostream& os);

}  // namespace hrg
