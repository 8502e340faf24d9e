#include "lsmapper/labeled_graph.hpp"

#include "lsmapper/error.hpp"

namespace lsm {

LabeledGraph::LabeledGraph(std::size_t n, std::vector<int> labels)
    : n_(n), labels_(std::move(labels)), adj_(n * n, 0) {
  if (labels_.empty()) labels_.assign(n, 0);
  if (labels_.size() != n) throw Error(ErrorKind::Parameter, "graph: label count differs from node count");
}

std::size_t LabeledGraph::num_edges() const noexcept {
  std::size_t m = 0;
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t v = u + 1; v < n_; ++v) m += adj_[u * n_ + v];
  return m;
}

void LabeledGraph::add_edge(std::size_t u, std::size_t v) {
  if (u >= n_ || v >= n_) throw Error(ErrorKind::Parameter, "graph: edge endpoint out of range");
  if (u == v) throw Error(ErrorKind::Parameter, "graph: self loops are not allowed");
  adj_[u * n_ + v] = adj_[v * n_ + u] = 1;
}

void LabeledGraph::remove_edge(std::size_t u, std::size_t v) {
  adj_[u * n_ + v] = adj_[v * n_ + u] = 0;
}

std::size_t LabeledGraph::degree(std::size_t u) const {
  std::size_t d = 0;
  for (std::size_t v = 0; v < n_; ++v) d += adj_[u * n_ + v];
  return d;
}

std::size_t LabeledGraph::add_node(int label) {
  std::size_t m = n_ + 1;
  std::vector<std::uint8_t> adj(m * m, 0);
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t v = 0; v < n_; ++v) adj[u * m + v] = adj_[u * n_ + v];
  adj_ = std::move(adj);
  labels_.push_back(label);
  n_ = m;
  return n_ - 1;
}

void LabeledGraph::remove_node(std::size_t x) {
  std::size_t m = n_ - 1;
  std::vector<std::uint8_t> adj(m * m, 0);
  for (std::size_t u = 0, a = 0; u < n_; ++u) {
    if (u == x) continue;
    for (std::size_t v = 0, b = 0; v < n_; ++v) {
      if (v == x) continue;
      adj[a * m + b] = adj_[u * n_ + v];
      ++b;
    }
    ++a;
  }
  adj_ = std::move(adj);
  labels_.erase(labels_.begin() + static_cast<long>(x));
  n_ = m;
}

std::vector<std::pair<std::size_t, std::size_t>> LabeledGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t v = u + 1; v < n_; ++v)
      if (adj_[u * n_ + v]) out.emplace_back(u, v);
  return out;
}

LabeledGraph LabeledGraph::permuted(const std::vector<std::size_t>& order) const {
  LabeledGraph g(order.size());
  for (std::size_t a = 0; a < order.size(); ++a) {
    g.labels_[a] = labels_[order[a]];
    for (std::size_t b = 0; b < order.size(); ++b)
      g.adj_[a * g.n_ + b] = adj_[order[a] * n_ + order[b]];
  }
  return g;
}

}  // namespace lsm
