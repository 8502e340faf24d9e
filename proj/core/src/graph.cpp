#include "lsmapper/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "lsmapper/error.hpp"

namespace lsm {

NeighborhoodGraph build_neighborhood_graph(const PointCloud& cloud, double delta) {
  if (!(delta > 0.0)) throw Error(ErrorKind::Parameter, "neighborhood graph: delta must be positive");
  NeighborhoodGraph g;
  g.num_vertices = cloud.size();
  g.delta = delta;
  const double d2 = delta * delta;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto xi = cloud.point(i);
    for (std::size_t j = i + 1; j < cloud.size(); ++j) {
      double sq = squared_distance(xi, cloud.point(j));
      // Compare the rooted value too so that the boundary case d == delta is
      // decided on the same number that is stored as the edge length.
      if (sq <= d2 * (1.0 + 1e-12) && std::sqrt(sq) <= delta) g.edges.push_back({i, j, std::sqrt(sq)});
    }
  }
  return g;
}

double euclidean_hausdorff(const PointCloud& a, const PointCloud& b) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::EmptyInput, "hausdorff: empty point cloud");
  auto directed = [](const PointCloud& x, const PointCloud& y) {
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < y.size() && best > worst; ++j)
        best = std::min(best, squared_distance(x.point(i), y.point(j)));
      worst = std::max(worst, best);
    }
    return std::sqrt(worst);
  };
  return std::max(directed(a, b), directed(b, a));
}

std::size_t calibration_subsample_size(std::size_t n, double beta) {
  if (n < 2) return n;
  double s = static_cast<double>(n) / std::pow(std::log(static_cast<double>(n)), 1.0 + beta);
  auto k = static_cast<std::size_t>(std::ceil(s - 1e-12));
  return std::clamp<std::size_t>(k, 1, n);
}

double calibrate_delta(const PointCloud& cloud, double beta, Rng& rng) {
  if (cloud.size() < 2) throw Error(ErrorKind::Size, "calibrate_delta: need at least 2 points");
  if (!(beta > 0.0)) throw Error(ErrorKind::Parameter, "calibrate_delta: beta must be positive");
  std::size_t m = calibration_subsample_size(cloud.size(), beta);
  std::uniform_int_distribution<std::size_t> pick(0, cloud.size() - 1);
  std::vector<std::size_t> idx(m);
  for (auto& i : idx) i = pick(rng);
  return euclidean_hausdorff(cloud.subset(idx), cloud);
}

Adjacency make_adjacency(std::size_t num_nodes, std::span<const NodePair> edges) {
  Adjacency a;
  a.offsets.assign(num_nodes + 1, 0);
  for (auto [u, v] : edges) {
    ++a.offsets[u + 1];
    ++a.offsets[v + 1];
  }
  std::partial_sum(a.offsets.begin(), a.offsets.end(), a.offsets.begin());
  a.targets.resize(a.offsets.back());
  std::vector<std::size_t> fill(a.offsets.begin(), a.offsets.end() - 1);
  for (auto [u, v] : edges) {
    a.targets[fill[u]++] = v;
    a.targets[fill[v]++] = u;
  }
  return a;
}

std::size_t count_components(std::size_t num_nodes, std::span<const NodePair> edges) {
  std::vector<std::size_t> parent(num_nodes);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t comps = num_nodes;
  for (auto [u, v] : edges) {
    auto a = find(u), b = find(v);
    if (a != b) {
      parent[std::max(a, b)] = std::min(a, b);
      --comps;
    }
  }
  return comps;
}

SubdividedGraph::SubdividedGraph(NeighborhoodGraph base, std::size_t s, FilterAssignment values)
    : base_(std::move(base)), s_(s), values_(std::move(values)) {
  if (values_.size() != num_nodes()) {
    throw Error(ErrorKind::Assignment, "subdivided graph: " + std::to_string(values_.size()) +
                                           " values for " + std::to_string(num_nodes()) + " nodes");
  }
}

SubdividedGraph::NodeInfo SubdividedGraph::node_info(std::size_t node) const {
  if (is_original(node)) return {};
  std::size_t k = node - base_.num_vertices;
  NodeInfo info;
  info.original = false;
  info.edge = k / s_;
  info.index = k % s_ + 1;
  info.t = static_cast<double>(info.index) / static_cast<double>(s_ + 1);
  return info;
}

std::vector<NodePair> SubdividedGraph::edges() const {
  std::vector<NodePair> out;
  out.reserve(base_.edges.size() * (s_ + 1));
  for (std::size_t e = 0; e < base_.edges.size(); ++e) {
    std::size_t prev = base_.edges[e].u;
    for (std::size_t i = 1; i <= s_; ++i) {
      std::size_t cur = subdivision_node(e, i);
      out.emplace_back(prev, cur);
      prev = cur;
    }
    out.emplace_back(prev, base_.edges[e].v);
  }
  return out;
}

std::vector<WeightedEdge> SubdividedGraph::weighted_edges() const {
  auto pairs = edges();
  std::vector<WeightedEdge> out;
  out.reserve(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    double len = base_.edges[k / (s_ + 1)].length / static_cast<double>(s_ + 1);
    out.push_back({pairs[k].first, pairs[k].second, len});
  }
  return out;
}

ValuedGraph SubdividedGraph::as_valued_graph() const { return {num_nodes(), edges(), values_}; }

SubdividedGraph subdivide_and_embed(const NeighborhoodGraph& g, const FilterAssignment& f_hat,
                                    std::size_t s) {
  if (!f_hat.codomain) throw Error(ErrorKind::Assignment, "subdivide: filter has no codomain");
  if (f_hat.size() != g.num_vertices) {
    throw Error(ErrorKind::Assignment, "subdivide: " + std::to_string(f_hat.size()) +
                                           " filter values for " + std::to_string(g.num_vertices) +
                                           " vertices");
  }
  FilterAssignment values{f_hat.values, f_hat.codomain};
  values.values.reserve(g.num_vertices + g.edges.size() * s);
  if (s > 0) {
    std::vector<double> ts(s);
    for (std::size_t i = 1; i <= s; ++i) ts[i - 1] = static_cast<double>(i) / static_cast<double>(s + 1);
    for (const auto& e : g.edges) {
      auto samples = f_hat.codomain->geodesic_samples(f_hat[e.u], f_hat[e.v], ts);
      for (auto& z : samples) values.values.push_back(std::move(z));
    }
  }
  return SubdividedGraph(g, s, std::move(values));
}

std::string graph_to_json(const SubdividedGraph& g) {
  nlohmann::ordered_json j;
  j["delta"] = g.base().delta;
  j["s"] = g.subdivisions();
  auto& nodes = j["nodes"] = nlohmann::ordered_json::array();
  for (std::size_t v = 0; v < g.num_nodes(); ++v) {
    nlohmann::ordered_json n;
    n["id"] = v;
    if (g.is_original(v)) {
      n["kind"] = "original";
    } else {
      auto info = g.node_info(v);
      n["kind"] = "subdivision";
      n["edge"] = info.edge;
      n["t"] = info.t;
    }
    nodes.push_back(std::move(n));
  }
  auto& edges = j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : g.weighted_edges()) edges.push_back({{"u", e.u}, {"v", e.v}, {"length", e.length}});
  return j.dump(2);
}

std::string graph_to_dot(const SubdividedGraph& g) {
  std::ostringstream out;
  out << "graph G {\n";
  for (std::size_t v = 0; v < g.num_nodes(); ++v) {
    out << "  " << v;
    if (!g.is_original(v)) out << " [shape=point]";
    out << ";\n";
  }
  for (auto [u, v] : g.edges()) out << "  " << u << " -- " << v << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace lsm
