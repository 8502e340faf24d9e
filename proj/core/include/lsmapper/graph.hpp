#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "lsmapper/length_space.hpp"
#include "lsmapper/types.hpp"

namespace lsm {

using NodePair = std::pair<std::size_t, std::size_t>;

struct WeightedEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  double length = 0.0;
};

/// delta-neighborhood graph on a point cloud: (i, j) is an edge iff
/// ||x_i - x_j|| <= delta. Edges are sorted by (u, v) with u < v.
struct NeighborhoodGraph {
  std::size_t num_vertices = 0;
  std::vector<WeightedEdge> edges;
  double delta = 0.0;
};

NeighborhoodGraph build_neighborhood_graph(const PointCloud& cloud, double delta);

/// Hausdorff distance between two clouds in the ambient Euclidean metric.
double euclidean_hausdorff(const PointCloud& a, const PointCloud& b);

/// ceil(n / log(n)^(1 + beta)), clamped to [1, n].
std::size_t calibration_subsample_size(std::size_t n, double beta);

/// Hausdorff distance between the cloud and a with-replacement subsample of
/// size calibration_subsample_size(n, beta).
double calibrate_delta(const PointCloud& cloud, double beta, Rng& rng);

/// Graph with one filter value per node; the common input of the
/// pseudometric routines.
struct ValuedGraph {
  std::size_t num_nodes = 0;
  std::vector<NodePair> edges;
  FilterAssignment values;
};

/// Compressed adjacency lists.
struct Adjacency {
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> targets;

  std::span<const std::size_t> neighbors(std::size_t u) const {
    return {targets.data() + offsets[u], offsets[u + 1] - offsets[u]};
  }
};

Adjacency make_adjacency(std::size_t num_nodes, std::span<const NodePair> edges);
std::size_t count_components(std::size_t num_nodes, std::span<const NodePair> edges);

/// Neighborhood graph with every edge split by s interior nodes, carrying
/// the filter embedded along codomain geodesics.
class SubdividedGraph {
 public:
  struct NodeInfo {
    bool original = true;
    std::size_t edge = 0;   // base edge index (subdivision nodes only)
    std::size_t index = 0;  // 1..s along the edge, from base u towards base v
    double t = 0.0;         // index / (s + 1)
  };

  SubdividedGraph() = default;
  SubdividedGraph(NeighborhoodGraph base, std::size_t s, FilterAssignment values);

  const NeighborhoodGraph& base() const noexcept { return base_; }
  std::size_t subdivisions() const noexcept { return s_; }
  std::size_t num_original() const noexcept { return base_.num_vertices; }
  std::size_t num_nodes() const noexcept { return base_.num_vertices + base_.edges.size() * s_; }
  bool is_original(std::size_t node) const noexcept { return node < base_.num_vertices; }

  NodeInfo node_info(std::size_t node) const;
  /// Id of the i-th (1-based) interior node of base edge e.
  std::size_t subdivision_node(std::size_t edge, std::size_t i) const {
    return base_.num_vertices + edge * s_ + (i - 1);
  }

  /// Sub-edges in a fixed order: for each base edge, u -> 1 -> ... -> s -> v.
  std::vector<NodePair> edges() const;
  std::vector<WeightedEdge> weighted_edges() const;

  const FilterAssignment& values() const noexcept { return values_; }
  ValuedGraph as_valued_graph() const;

 private:
  NeighborhoodGraph base_;
  std::size_t s_ = 0;
  FilterAssignment values_;
};

/// Embeds f_hat on the base vertices and along each edge's codomain path.
/// s = 0 keeps the base graph with endpoint values only.
SubdividedGraph subdivide_and_embed(const NeighborhoodGraph& g, const FilterAssignment& f_hat,
                                    std::size_t s);

std::string graph_to_json(const SubdividedGraph& g);
std::string graph_to_dot(const SubdividedGraph& g);

}  // namespace lsm
