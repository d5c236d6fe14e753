#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hrg/geom.hpp"

namespace hrg {

enum class ModelTag { kpkvb, poissonized, box };

std::string to_string(ModelTag tag);
ModelTag model_tag_from_string(const std::string& s);

/// Immutable vertex-attributed graph. Coordinates are polar for the disk
/// models and planar for the box model; adjacency lists are strictly sorted,
/// symmetric and loop-free.
class Graph {
 public:
  Graph(ModelTag tag, double alpha, double nu, std::int64_t n, double R, std::uint64_t seed,
        std::vector<PolarPoint> polar, std::vector<PlanePoint> plane,
        std::vector<std::vector<std::uint32_t>> adjacency);

  ModelTag model_tag() const { return tag_; }
  double alpha() const { return alpha_; }
  double nu() const { return nu_; }
  std::int64_t n_configured() const { return n_; }
  double R() const { return R_; }
  std::uint64_t seed() const { return seed_; }

  std::size_t num_vertices() const { return adjacency_.size(); }
  std::size_t num_edges() const;
  std::size_t degree(std::uint32_t v) const { return adjacency_[v].size(); }
  std::span<const std::uint32_t> neighbors(std::uint32_t v) const {
    return adjacency_[v];
  }
  bool has_edge(std::uint32_t u, std::uint32_t v) const;

  const std::vector<PolarPoint>& polar_coords() const { return polar_; }
  const std::vector<PlanePoint>& plane_coords() const { return plane_; }

 private:
  ModelTag tag_;
  double alpha_;
  double nu_;
  std::int64_t n_;
  double R_;
  std::uint64_t seed_;
  std::vector<PolarPoint> polar_;
  std::vector<PlanePoint> plane_;
  std::vector<std::vector<std::uint32_t>> adjacency_;
};

/// Plain-text edge list: header `# model alpha nu n R seed`, then one
/// `u v` pair per line, 0-indexed, u < v, sorted lexicographically.
void write_edge_list(const Graph& g, std::ostream& os);

/// CSV `vertex,r_or_x,theta_or_y`.
void write_coordinates_csv(const Graph& g, std::ostream& os);

}  // namespace hrg
