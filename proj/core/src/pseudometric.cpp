#include "lsmapper/pseudometric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "lsmapper/error.hpp"

namespace lsm {
namespace {

struct Dsu {
  std::vector<std::size_t> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

void check_graph(const ValuedGraph& g) {
  if (!g.values.codomain) throw Error(ErrorKind::Parameter, "minimax: graph values have no codomain");
  if (g.values.size() != g.num_nodes)
    throw Error(ErrorKind::Assignment, "minimax: one value per node is required");
  for (auto [u, v] : g.edges)
    if (u >= g.num_nodes || v >= g.num_nodes) throw Error(ErrorKind::Parameter, "minimax: edge out of range");
}

bool is_scalar(const ValuedGraph& g) {
  return g.values.codomain->is_euclidean() && g.values.codomain->dimension() == 1;
}

std::vector<double> scalar_values(const ValuedGraph& g) {
  if (!is_scalar(g))
    throw Error(ErrorKind::Parameter, "exact_scalar minimax needs a one-dimensional Euclidean codomain");
  std::vector<double> out(g.num_nodes);
  for (std::size_t i = 0; i < g.num_nodes; ++i) out[i] = as_vector(g.values[i])[0];
  return out;
}

std::vector<double> distance_matrix(const ValuedGraph& g) {
  const std::size_t n = g.num_nodes;
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = g.values.codomain->distance(g.values[i], g.values[j]);
  return d;
}

double set_diameter(std::span<const std::size_t> nodes, const std::vector<double>& d, std::size_t n) {
  double best = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j) best = std::max(best, d[nodes[i] * n + nodes[j]]);
  return best;
}

// Shortest-hop path from `from` to `to` through allowed nodes; empty if none.
std::vector<std::size_t> bfs_path(const Adjacency& adj, std::size_t n, std::size_t from, std::size_t to,
                                  const std::vector<char>& allowed) {
  if (!allowed[from] || !allowed[to]) return {};
  std::vector<std::size_t> prev(n, n);
  std::queue<std::size_t> q;
  prev[from] = from;
  q.push(from);
  while (!q.empty()) {
    std::size_t u = q.front();
    q.pop();
    if (u == to) break;
    for (std::size_t w : adj.neighbors(u)) {
      if (allowed[w] && prev[w] == n) {
        prev[w] = u;
        q.push(w);
      }
    }
  }
  if (prev[to] == n) return {};
  std::vector<std::size_t> path{to};
  while (path.back() != from) path.push_back(prev[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

MinimaxResult exact_scalar(const ValuedGraph& g, std::size_t from, std::size_t to) {
  auto f = scalar_values(g);
  const std::size_t n = g.num_nodes;
  Adjacency adj = make_adjacency(n, g.edges);
  std::vector<double> gaps;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (f[j] >= f[i]) gaps.push_back(f[j] - f[i]);
  std::sort(gaps.begin(), gaps.end());
  gaps.erase(std::unique(gaps.begin(), gaps.end()), gaps.end());
  std::vector<char> allowed(n);
  // Window [a, a + D] with a at a node value; the lower edge of an optimal
  // window can always be slid down onto the smallest value it contains.
  auto feasible = [&](double D, std::vector<std::size_t>* path) {
    for (std::size_t a = 0; a < n; ++a) {
      double lo = f[a], hi = f[a] + D;
      if (f[from] < lo || f[from] > hi || f[to] < lo || f[to] > hi) continue;
      for (std::size_t i = 0; i < n; ++i) allowed[i] = f[i] >= lo && f[i] - lo <= D;
      auto p = bfs_path(adj, n, from, to, allowed);
      if (!p.empty()) {
        if (path) *path = std::move(p);
        return true;
      }
    }
    return false;
  };
  MinimaxResult r;
  if (gaps.empty() || !feasible(gaps.back(), nullptr)) {
    r.value = r.lower = r.upper = kDisconnected;
    return r;
  }
  std::size_t lo = 0, hi = gaps.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (feasible(gaps[mid], nullptr)) hi = mid;
    else lo = mid + 1;
  }
  feasible(gaps[lo], &r.witness);
  r.value = r.lower = r.upper = gaps[lo];
  return r;
}

MinimaxResult exact_bruteforce(const ValuedGraph& g, std::size_t from, std::size_t to) {
  const std::size_t n = g.num_nodes;
  if (n > kBruteforceNodeLimit) {
    throw Error(ErrorKind::Size, "exact_bruteforce minimax is limited to " +
                                     std::to_string(kBruteforceNodeLimit) + " nodes");
  }
  auto d = distance_matrix(g);
  Adjacency adj = make_adjacency(n, g.edges);
  MinimaxResult r;
  r.value = kDisconnected;
  std::vector<std::size_t> path{from};
  std::vector<char> on_path(n, 0);
  on_path[from] = 1;
  auto dfs = [&](auto&& self, std::size_t u, double diam) -> void {
    if (diam >= r.value) return;
    if (u == to) {
      r.value = diam;
      r.witness = path;
      return;
    }
    for (std::size_t w : adj.neighbors(u)) {
      if (on_path[w]) continue;
      double grow = diam;
      for (std::size_t p : path) grow = std::max(grow, d[p * n + w]);
      on_path[w] = 1;
      path.push_back(w);
      self(self, w, grow);
      path.pop_back();
      on_path[w] = 0;
    }
  };
  dfs(dfs, from, 0.0);
  r.lower = r.upper = r.value;
  return r;
}

// Smallest radius r (over anchors u) such that from and to are joined inside
// the ball B(u, r), together with a path realizing it.
struct BallSearch {
  double radius = kDisconnected;
  std::vector<std::size_t> path;
};

BallSearch ball_search(const Adjacency& adj, std::size_t n, const std::vector<double>& d, std::size_t from,
                       std::size_t to) {
  BallSearch best;
  std::vector<char> allowed(n);
  std::vector<double> radii(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t i = 0; i < n; ++i) radii[i] = d[u * n + i];
    std::sort(radii.begin(), radii.end());
    auto ok = [&](double r, std::vector<std::size_t>* path) {
      for (std::size_t i = 0; i < n; ++i) allowed[i] = d[u * n + i] <= r;
      auto p = bfs_path(adj, n, from, to, allowed);
      if (p.empty()) return false;
      if (path) *path = std::move(p);
      return true;
    };
    // Only radii below the current best can improve it.
    std::size_t hi = static_cast<std::size_t>(std::lower_bound(radii.begin(), radii.end(), best.radius) - radii.begin());
    if (hi == 0 || !ok(radii[hi - 1], nullptr)) continue;
    std::size_t lo = 0;
    --hi;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (ok(radii[mid], nullptr)) hi = mid;
      else lo = mid + 1;
    }
    best.radius = radii[lo];
    ok(radii[lo], &best.path);
  }
  return best;
}

MinimaxResult sandwich_from(const ValuedGraph& g, const Adjacency& adj, const std::vector<double>& d,
                            std::size_t from, std::size_t to) {
  const std::size_t n = g.num_nodes;
  MinimaxResult r;
  r.exact = false;
  if (from == to) {
    r.exact = true;
    r.witness = {from};
    return r;
  }
  BallSearch b = ball_search(adj, n, d, from, to);
  if (b.path.empty()) {
    r.value = r.lower = r.upper = kDisconnected;
    r.exact = true;
    return r;
  }
  // A path of diameter D lies in the D-ball of any of its nodes, so the best
  // ball radius bounds D from below; the ball's path has diameter <= 2 r.
  r.lower = std::max(b.radius, d[from * n + to]);
  r.witness = std::move(b.path);
  r.upper = set_diameter(r.witness, d, n);
  r.value = r.upper;
  if (r.upper <= r.lower) {
    r.lower = r.upper;
    r.exact = true;
  }
  return r;
}

// Replaces a matrix of upper bounds by its closure under the triangle
// inequality. The true pseudometric satisfies it, so entries stay above it.
void triangle_closure(std::vector<double>& m, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i * n + k] == kDisconnected) continue;
      for (std::size_t j = 0; j < n; ++j) {
        double via = m[i * n + k] + m[k * n + j];
        if (via < m[i * n + j]) m[i * n + j] = via;
      }
    }
}

}  // namespace

MinimaxResult minimax_path_distance(const ValuedGraph& graph, std::size_t from, std::size_t to, MinimaxMode mode) {
  check_graph(graph);
  if (from >= graph.num_nodes || to >= graph.num_nodes)
    throw Error(ErrorKind::Parameter, "minimax: node out of range");
  if (from == to) {
    if (mode == MinimaxMode::ExactScalar) scalar_values(graph);
    if (mode == MinimaxMode::ExactBruteforce && graph.num_nodes > kBruteforceNodeLimit)
      return exact_bruteforce(graph, from, to);  // raises the size error
    MinimaxResult r;
    r.witness = {from};
    return r;
  }
  switch (mode) {
    case MinimaxMode::ExactScalar: return exact_scalar(graph, from, to);
    case MinimaxMode::ExactBruteforce: return exact_bruteforce(graph, from, to);
    case MinimaxMode::Sandwich: break;
  }
  return sandwich_from(graph, make_adjacency(graph.num_nodes, graph.edges), distance_matrix(graph), from, to);
}

std::vector<double> minimax_all_pairs_scalar(const ValuedGraph& graph, std::span<const std::size_t> targets) {
  check_graph(graph);
  auto f = scalar_values(graph);
  const std::size_t n = graph.num_nodes, t = targets.size();
  for (std::size_t x : targets)
    if (x >= n) throw Error(ErrorKind::Parameter, "minimax: target out of range");
  std::vector<double> out(t * t, kDisconnected);
  for (std::size_t i = 0; i < t; ++i) out[i * t + i] = 0.0;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
  std::vector<std::vector<std::size_t>> slots_of(n);  // node -> target slots
  for (std::size_t i = 0; i < t; ++i) slots_of[targets[i]].push_back(i);
  Adjacency adj = make_adjacency(n, graph.edges);
  std::vector<char> active(n);
  // For each lower edge a, grow the window upwards; two targets first meet
  // when the window reaches the value of the node that joins them.
  for (std::size_t start = 0; start < n; ++start) {
    const double a = f[order[start]];
    if (start > 0 && f[order[start - 1]] == a) continue;  // same window family
    Dsu dsu(n);
    std::vector<std::vector<std::size_t>> comp_targets(n);
    std::fill(active.begin(), active.end(), 0);
    for (std::size_t pos = start; pos < n; ++pos) {
      std::size_t v = order[pos];
      const double D = f[v] - a;
      active[v] = 1;
      comp_targets[v] = slots_of[v];
      for (std::size_t w : adj.neighbors(v)) {
        if (!active[w]) continue;
        std::size_t rv = dsu.find(v), rw = dsu.find(w);
        if (rv == rw) continue;
        for (std::size_t x : comp_targets[rv])
          for (std::size_t y : comp_targets[rw]) {
            if (D < out[x * t + y]) out[x * t + y] = out[y * t + x] = D;
          }
        dsu.unite(rv, rw);
        std::size_t root = dsu.find(rv), other = root == rv ? rw : rv;
        auto& dst = comp_targets[root];
        dst.insert(dst.end(), comp_targets[other].begin(), comp_targets[other].end());
        comp_targets[other].clear();
      }
    }
  }
  // Repeated targets (same node in several slots) are at distance 0.
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j)
      if (targets[i] == targets[j]) out[i * t + j] = 0.0;
  return out;
}

PseudometricMatrix valued_graph_pseudometric(const ValuedGraph& graph, std::span<const std::size_t> nodes,
                                             MinimaxMode mode) {
  check_graph(graph);
  const std::size_t t = nodes.size();
  if (t == 0) throw Error(ErrorKind::EmptyInput, "pseudometric: no nodes");
  std::vector<double> m;
  bool exact = true;
  if (mode == MinimaxMode::ExactScalar) {
    m = minimax_all_pairs_scalar(graph, nodes);
  } else {
    m.assign(t * t, 0.0);
    if (mode == MinimaxMode::ExactBruteforce) {
      for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = i + 1; j < t; ++j)
          m[i * t + j] = m[j * t + i] = minimax_path_distance(graph, nodes[i], nodes[j], mode).value;
    } else {
      auto adj = make_adjacency(graph.num_nodes, graph.edges);
      auto d = distance_matrix(graph);
      for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = i + 1; j < t; ++j) {
          auto r = sandwich_from(graph, adj, d, nodes[i], nodes[j]);
          exact = exact && r.exact;
          m[i * t + j] = m[j * t + i] = r.value;
        }
      triangle_closure(m, t);
    }
  }
  PseudometricMatrix out;
  out.exact = exact;
  double largest = 0.0;
  for (double x : m)
    if (x != kDisconnected) largest = std::max(largest, x);
  std::vector<Element> vals;
  for (std::size_t v : nodes) vals.push_back(graph.values[v]);
  double surrogate = largest + finite_set_diameter(vals, *graph.values.codomain);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j)
      if (m[i * t + j] == kDisconnected) {
        m[i * t + j] = surrogate;
        if (i < j) out.surrogate_pairs.emplace_back(i, j);
      }
  std::vector<std::string> labels;
  for (std::size_t v : nodes) labels.push_back(std::to_string(v));
  out.space = FinitePseudometricSpace(std::move(labels), std::move(m));
  return out;
}

ValuedGraph mapper_valued_graph(const MapperComplex& mapper, const LengthSpacePtr& codomain) {
  ValuedGraph g;
  g.num_nodes = mapper.nodes.size();
  g.edges = mapper.edges();
  g.values.codomain = codomain;
  for (const auto& n : mapper.nodes) {
    if (!n.representative)
      throw Error(ErrorKind::Representative, "mapper node " + std::to_string(n.id) + " has no representative");
    g.values.values.push_back(*n.representative);
  }
  return g;
}

PseudometricMatrix mapper_pseudometric_matrix(const MapperComplex& mapper, const LengthSpacePtr& codomain,
                                              MinimaxMode mode) {
  auto g = mapper_valued_graph(mapper, codomain);
  std::vector<std::size_t> nodes(g.num_nodes);
  std::iota(nodes.begin(), nodes.end(), std::size_t{0});
  return valued_graph_pseudometric(g, nodes, mode);
}

PseudometricMatrix graph_pseudometric_matrix(const SubdividedGraph& graph, MinimaxMode mode) {
  auto g = graph.as_valued_graph();
  std::vector<std::size_t> nodes(graph.num_original());
  std::iota(nodes.begin(), nodes.end(), std::size_t{0});
  return valued_graph_pseudometric(g, nodes, mode);
}

ReebQuotient discrete_reeb_quotient(const ValuedGraph& graph, double tol) {
  check_graph(graph);
  if (!(tol >= 0.0)) throw Error(ErrorKind::Parameter, "reeb quotient: tol must be nonnegative");
  const std::size_t n = graph.num_nodes;
  Dsu dsu(n);
  for (auto [u, v] : graph.edges)
    if (graph.values.codomain->distance(graph.values[u], graph.values[v]) <= tol) dsu.unite(u, v);
  ReebQuotient q;
  q.projection.assign(n, 0);
  std::vector<std::size_t> class_of_root(n, n);
  q.graph.values.codomain = graph.values.codomain;
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t r = dsu.find(v);
    if (class_of_root[r] == n) {
      class_of_root[r] = q.graph.num_nodes++;
      q.graph.values.values.push_back(graph.values[v]);
    }
    q.projection[v] = class_of_root[r];
  }
  for (auto [u, v] : graph.edges) {
    std::size_t a = q.projection[u], b = q.projection[v];
    if (a != b) q.graph.edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(q.graph.edges.begin(), q.graph.edges.end());
  q.graph.edges.erase(std::unique(q.graph.edges.begin(), q.graph.edges.end()), q.graph.edges.end());
  return q;
}

}  // namespace lsm
