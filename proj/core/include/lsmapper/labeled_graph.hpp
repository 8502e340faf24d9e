#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace lsm {

/// Small undirected simple graph with integer node labels. Used as an element
/// of the graph codomain, so it is a plain value type with exact equality.
class LabeledGraph {
 public:
  LabeledGraph() = default;
  explicit LabeledGraph(std::size_t n, std::vector<int> labels = {});

  std::size_t num_nodes() const noexcept { return n_; }
  std::size_t num_edges() const noexcept;

  int label(std::size_t u) const { return labels_[u]; }
  void set_label(std::size_t u, int label) { labels_[u] = label; }
  const std::vector<int>& labels() const noexcept { return labels_; }

  bool has_edge(std::size_t u, std::size_t v) const { return adj_[u * n_ + v] != 0; }
  void add_edge(std::size_t u, std::size_t v);
  void remove_edge(std::size_t u, std::size_t v);
  std::size_t degree(std::size_t u) const;

  std::size_t add_node(int label = 0);
  /// Removes node u and its incident edges; higher ids shift down by one.
  void remove_node(std::size_t u);

  /// Edge list with u < v, sorted lexicographically.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  /// Relabels nodes so that old node `order[k]` becomes node k.
  LabeledGraph permuted(const std::vector<std::size_t>& order) const;

  friend bool operator==(const LabeledGraph&, const LabeledGraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<int> labels_;
  std::vector<std::uint8_t> adj_;
};

}  // namespace lsm
