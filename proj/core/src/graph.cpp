#include "hrg/graph.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace hrg {

std::string to_string(ModelTag tag) {
  switch (tag) {
    case ModelTag::kpkvb: return "kpkvb";
    case ModelTag::poissonized: return "poissonized";
    case ModelTag::box: return "box";
  }
  return "?";
}

ModelTag model_tag_from_string(const std::string& s) {
  if (s == "kpkvb") return ModelTag::kpkvb;
  if (s == "poissonized") return ModelTag::poissonized;
  if (s == "box") return ModelTag::box;
  throw std::invalid_argument("unknown model: " + s);
}

Graph::Graph(ModelTag tag, double alpha, double nu, std::int64_t n, double R,
             std::uint64_t seed, std::vector<PolarPoint> polar, std::vector<PlanePoint> plane,
             std::vector<std::vector<std::uint32_t>> adjacency)
    : tag_(tag),
      alpha_(alpha),
      nu_(nu),
      n_(n),
      R_(R),
      seed_(seed),
      polar_(std::move(polar)),
      plane_(std::move(plane)),
      adjacency_(std::move(adjacency)) {}

std::size_t Graph::num_edges() const {
  std::size_t twice = 0;
  for (const auto& nbrs : adjacency_) twice += nbrs.size();
  return twice / 2;
}

bool Graph::has_edge(std::uint32_t u, std::uint32_t v) const {
  const auto& nbrs = adjacency_[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

void write_edge_list(const Graph& g, std::ostream& os) {
  os << "# " << to_string(g.model_tag()) << ' ' << g.alpha() << ' ' << g.nu() << ' '
     << g.n_configured() << ' ' << g.R() << ' ' << g.seed() << '\n';
  const std::uint32_t n = static_cast<std::uint32_t>(g.num_vertices());
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v : g.neighbors(u)) {
      if (u < v) os << u << ' ' << v << '\n';
    }
  }
}

void write_coordinates_csv(const Graph& g, std::ostream& os) {
  os << "vertex,r_or_x,theta_or_y\n";
  const std::size_t n = g.num_vertices();
  if (g.model_tag() == ModelTag::box) {
    for (std::size_t v = 0; v < n; ++v) {
      os << v << ',' << g.plane_coords()[v].x << ',' << g.plane_coords()[v].y << '\n';
    }
  } else {
    for (std::size_t v = 0; v < n; ++v) {
      os << v << ',' << g.polar_coords()[v].r << ',' << g.polar_coords()[v].theta << '\n';
    }
  }
}

}  // namespace hrg
