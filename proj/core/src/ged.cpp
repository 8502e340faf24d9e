// Unit-cost graph edit distance: A* over partial node assignments with an
// admissible bound, and a beam search for larger graphs.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>

#include "lsmapper/codomains.hpp"
#include "lsmapper/error.hpp"

namespace lsm {
namespace {

constexpr std::size_t kMaxNodes = 64;
constexpr std::int8_t kDeleted = -1;

struct Problem {
  std::size_t n1 = 0, n2 = 0;
  std::array<std::uint64_t, kMaxNodes> adj1{}, adj2{};
  std::vector<int> lab1, lab2;  // dense label ids
  std::size_t num_labels = 0;
  std::vector<std::size_t> order;  // source processing order
  std::size_t e1 = 0, e2 = 0;
};

Problem make_problem(const LabeledGraph& g, const LabeledGraph& h) {
  Problem p;
  p.n1 = g.num_nodes();
  p.n2 = h.num_nodes();
  for (std::size_t u = 0; u < p.n1; ++u)
    for (std::size_t v = 0; v < p.n1; ++v)
      if (g.has_edge(u, v)) p.adj1[u] |= std::uint64_t{1} << v;
  for (std::size_t u = 0; u < p.n2; ++u)
    for (std::size_t v = 0; v < p.n2; ++v)
      if (h.has_edge(u, v)) p.adj2[u] |= std::uint64_t{1} << v;
  std::map<int, int> ids;
  for (int l : g.labels()) ids.emplace(l, 0);
  for (int l : h.labels()) ids.emplace(l, 0);
  int next = 0;
  for (auto& [l, id] : ids) id = next++;
  p.num_labels = ids.size();
  for (int l : g.labels()) p.lab1.push_back(ids[l]);
  for (int l : h.labels()) p.lab2.push_back(ids[l]);
  p.order.resize(p.n1);
  std::iota(p.order.begin(), p.order.end(), std::size_t{0});
  // High-degree nodes first: their edges fix most of the cost early.
  std::stable_sort(p.order.begin(), p.order.end(), [&](std::size_t a, std::size_t b) {
    return std::popcount(p.adj1[a]) > std::popcount(p.adj1[b]);
  });
  p.e1 = g.num_edges();
  p.e2 = h.num_edges();
  return p;
}

struct State {
  std::array<std::int8_t, kMaxNodes> image{};  // indexed by source node id
  std::uint64_t processed = 0;                   // source nodes
  std::uint64_t used = 0;                        // target nodes
  std::uint32_t depth = 0;
  std::uint32_t cost = 0;
  std::uint32_t bound = 0;  // cost + heuristic
  std::uint32_t e1_done = 0;
  std::uint32_t e2_done = 0;
  std::uint64_t seq = 0;
};

// Per-state data shared by all children: the children differ only in the
// target chosen for the next source node, so each child costs O(1) here.
struct Expansion {
  std::size_t u = 0;
  std::uint64_t nb_image = 0;    // images of processed, kept neighbors of u
  std::uint32_t nb_deleted = 0;  // processed neighbors of u that were deleted
  std::uint32_t nb_count = 0;    // processed neighbors of u
  std::array<int, kMaxNodes * 2> cnt1{}, cnt2{};  // remaining labels after u / unused targets
  std::size_t matched = 0;
  std::size_t r1 = 0, r2 = 0;
};

Expansion expand(const Problem& p, const State& s) {
  Expansion x;
  x.u = p.order[s.depth];
  std::uint64_t nb = p.adj1[x.u] & s.processed;
  x.nb_count = static_cast<std::uint32_t>(std::popcount(nb));
  while (nb) {
    std::size_t w = static_cast<std::size_t>(std::countr_zero(nb));
    nb &= nb - 1;
    if (s.image[w] == kDeleted) ++x.nb_deleted;
    else x.nb_image |= std::uint64_t{1} << s.image[w];
  }
  for (std::size_t k = s.depth + 1; k < p.n1; ++k) {
    ++x.cnt1[static_cast<std::size_t>(p.lab1[p.order[k]])];
    ++x.r1;
  }
  for (std::size_t v = 0; v < p.n2; ++v) {
    if (!((s.used >> v) & 1)) {
      ++x.cnt2[static_cast<std::size_t>(p.lab2[v])];
      ++x.r2;
    }
  }
  for (std::size_t l = 0; l < p.num_labels; ++l)
    x.matched += static_cast<std::size_t>(std::min(x.cnt1[l], x.cnt2[l]));
  return x;
}

// Completion bound: unmatched remaining labels plus the gap in remaining
// edge counts.
std::uint32_t heuristic(std::size_t r1, std::size_t r2, std::size_t matched, long rem1, long rem2) {
  return static_cast<std::uint32_t>(std::max(r1, r2) - matched + static_cast<std::size_t>(std::labs(rem1 - rem2)));
}

std::uint32_t root_heuristic(const Problem& p) {
  std::array<int, kMaxNodes * 2> cnt1{}, cnt2{};
  for (std::size_t u = 0; u < p.n1; ++u) ++cnt1[static_cast<std::size_t>(p.lab1[u])];
  for (std::size_t v = 0; v < p.n2; ++v) ++cnt2[static_cast<std::size_t>(p.lab2[v])];
  std::size_t matched = 0;
  for (std::size_t l = 0; l < p.num_labels; ++l) matched += static_cast<std::size_t>(std::min(cnt1[l], cnt2[l]));
  return heuristic(p.n1, p.n2, matched, static_cast<long>(p.e1), static_cast<long>(p.e2));
}

// Cost of inserting every unused target node and the target edges touching them.
std::uint32_t completion_cost(const Problem& p, const State& s) {
  std::uint64_t all2 = p.n2 == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << p.n2) - 1;
  std::uint64_t unused = all2 & ~s.used;
  std::uint32_t c = static_cast<std::uint32_t>(std::popcount(unused));
  return c + static_cast<std::uint32_t>(p.e2 - s.e2_done);
}

// Child of s mapping the next source node to v (kDeleted for deletion).
State child(const Problem& p, const State& s, const Expansion& x, int v, std::uint64_t seq) {
  State c = s;
  std::uint32_t step;
  std::size_t matched = x.matched, r2 = x.r2;
  if (v == kDeleted) {
    step = 1 + x.nb_count;
    // u leaves the source pool unmatched; the target pool is unchanged.
  } else {
    auto vv = static_cast<std::size_t>(v);
    std::uint64_t tgt = p.adj2[vv] & s.used;
    step = (p.lab1[x.u] != p.lab2[vv]) + x.nb_deleted +
           static_cast<std::uint32_t>(std::popcount(x.nb_image ^ tgt));
    auto l = static_cast<std::size_t>(p.lab2[vv]);
    if (x.cnt2[l] <= x.cnt1[l]) --matched;
    --r2;
    c.e2_done += static_cast<std::uint32_t>(std::popcount(tgt));
    c.used |= std::uint64_t{1} << v;
  }
  c.cost = s.cost + step;
  c.image[x.u] = static_cast<std::int8_t>(v);
  c.e1_done += x.nb_count;
  c.processed |= std::uint64_t{1} << x.u;
  c.depth = s.depth + 1;
  c.seq = seq;
  if (c.depth == p.n1) {
    c.cost += completion_cost(p, c);
    c.bound = c.cost;
  } else {
    c.bound = c.cost + heuristic(x.r1, r2, matched, static_cast<long>(p.e1) - c.e1_done,
                                 static_cast<long>(p.e2) - c.e2_done);
  }
  return c;
}

std::vector<long> to_mapping(const Problem& p, const State& s) {
  std::vector<long> m(p.n1);
  for (std::size_t u = 0; u < p.n1; ++u) m[u] = s.image[u];
  return m;
}

template <typename F>
void for_each_choice(const Problem& p, const State& s, F&& f) {
  for (std::size_t v = 0; v < p.n2; ++v)
    if (!((s.used >> v) & 1)) f(static_cast<int>(v));
  f(kDeleted);
}

State root(const Problem& p) {
  State s;
  s.image.fill(kDeleted);
  if (p.n1 == 0) {
    s.cost = completion_cost(p, s);
    s.bound = s.cost;
  } else {
    s.bound = root_heuristic(p);
  }
  return s;
}

State beam_search(const Problem& p, std::size_t width) {
  std::vector<State> beam{root(p)};
  std::uint64_t seq = 0;
  for (std::size_t depth = 0; depth < p.n1; ++depth) {
    std::vector<State> next;
    next.reserve(beam.size() * (p.n2 + 1));
    for (const State& s : beam) {
      Expansion x = expand(p, s);
      for_each_choice(p, s, [&](int v) { next.push_back(child(p, s, x, v, seq++)); });
    }
    auto better = [](const State& a, const State& b) {
      if (a.bound != b.bound) return a.bound < b.bound;
      if (a.cost != b.cost) return a.cost > b.cost;
      return a.seq < b.seq;
    };
    if (next.size() > width) {
      std::partial_sort(next.begin(), next.begin() + static_cast<long>(width), next.end(), better);
      next.resize(width);
    } else {
      std::sort(next.begin(), next.end(), better);
    }
    beam = std::move(next);
  }
  return *std::min_element(beam.begin(), beam.end(), [](const State& a, const State& b) {
    return a.cost != b.cost ? a.cost < b.cost : a.seq < b.seq;
  });
}

State astar(const Problem& p, State incumbent) {
  auto worse = [](const State& a, const State& b) {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.seq > b.seq;
  };
  std::priority_queue<State, std::vector<State>, decltype(worse)> open(worse);
  open.push(root(p));
  std::uint64_t seq = 0;
  while (!open.empty()) {
    State s = open.top();
    open.pop();
    if (s.bound >= incumbent.cost) break;
    if (s.depth == p.n1) return s;  // first complete state popped is optimal
    Expansion x = expand(p, s);
    for_each_choice(p, s, [&](int v) {
      State c = child(p, s, x, v, ++seq);
      if (c.bound < incumbent.cost) open.push(c);
    });
  }
  return incumbent;
}

void check_budget(const LabeledGraph& g, const GedOptions& options) {
  std::size_t limit = std::min(options.budget, kMaxNodes);
  if (g.num_nodes() > limit) {
    throw Error(ErrorKind::Size, "graph edit distance: graph with " + std::to_string(g.num_nodes()) +
                                     " nodes exceeds the budget of " + std::to_string(limit));
  }
}

}  // namespace

GedResult graph_edit_distance(const LabeledGraph& g, const LabeledGraph& h,
                              const GedOptions& options) {
  check_budget(g, options);
  check_budget(h, options);
  if (options.beam_width == 0) throw Error(ErrorKind::Parameter, "graph edit distance: beam width is 0");
  GedResult r;
  if (g == h) {
    r.path.mapping.resize(g.num_nodes());
    std::iota(r.path.mapping.begin(), r.path.mapping.end(), 0L);
    return r;
  }
  Problem p = make_problem(g, h);
  State best = beam_search(p, options.beam_width);
  r.exact = std::max(p.n1, p.n2) <= options.exact_limit;
  if (r.exact) best = astar(p, best);
  r.distance = best.cost;
  r.path = edit_path_for_mapping(g, h, to_mapping(p, best));
  return r;
}

std::size_t ged_lower_bound(const LabeledGraph& g, const LabeledGraph& h) {
  std::size_t n = std::max(g.num_nodes(), h.num_nodes());
  std::vector<std::size_t> dg(n, 0), dh(n, 0);
  for (auto [u, v] : g.edges()) ++dg[u], ++dg[v];
  for (auto [u, v] : h.edges()) ++dh[u], ++dh[v];
  std::sort(dg.begin(), dg.end());
  std::sort(dh.begin(), dh.end());
  std::size_t gap = 0;
  for (std::size_t i = 0; i < n; ++i) gap += dg[i] > dh[i] ? dg[i] - dh[i] : dh[i] - dg[i];
  std::map<int, long> count;
  for (int l : g.labels()) ++count[l];
  std::size_t matched = 0;
  for (int l : h.labels()) {
    auto it = count.find(l);
    if (it != count.end() && it->second > 0) {
      --it->second;
      ++matched;
    }
  }
  return (n - matched) + (gap + 1) / 2;
}

std::size_t edit_cost_for_mapping(const LabeledGraph& g, const LabeledGraph& h,
                                  const std::vector<long>& mapping) {
  return edit_path_for_mapping(g, h, mapping).size();
}

EditPath edit_path_for_mapping(const LabeledGraph& g, const LabeledGraph& h,
                               const std::vector<long>& mapping) {
  using T = EditOperation::Type;
  std::size_t n1 = g.num_nodes(), n2 = h.num_nodes();
  if (mapping.size() != n1) throw Error(ErrorKind::Parameter, "edit path: mapping size mismatch");
  std::vector<long> inverse(n2, -1);
  for (std::size_t u = 0; u < n1; ++u) {
    long v = mapping[u];
    if (v < -1 || v >= static_cast<long>(n2) || (v >= 0 && inverse[static_cast<std::size_t>(v)] != -1))
      throw Error(ErrorKind::Parameter, "edit path: mapping is not an injection");
    if (v >= 0) inverse[static_cast<std::size_t>(v)] = static_cast<long>(u);
  }
  EditPath path;
  path.mapping = mapping;
  auto& ops = path.operations;
  for (auto [u, w] : g.edges()) {
    long a = mapping[u], b = mapping[w];
    if (a < 0 || b < 0 || !h.has_edge(static_cast<std::size_t>(a), static_cast<std::size_t>(b)))
      ops.push_back({T::DeleteEdge, u, w, 0});
  }
  for (std::size_t u = 0; u < n1; ++u)
    if (mapping[u] < 0) ops.push_back({T::DeleteNode, u, 0, 0});
  for (std::size_t u = 0; u < n1; ++u) {
    if (mapping[u] < 0) continue;
    int target = h.label(static_cast<std::size_t>(mapping[u]));
    if (g.label(u) != target) ops.push_back({T::SubstituteNode, u, 0, target});
  }
  for (std::size_t v = 0; v < n2; ++v)
    if (inverse[v] < 0) ops.push_back({T::InsertNode, v, 0, h.label(v)});
  for (auto [a, b] : h.edges()) {
    long u = inverse[a], w = inverse[b];
    if (u < 0 || w < 0 || !g.has_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(w)))
      ops.push_back({T::InsertEdge, a, b, 0});
  }
  return path;
}

LabeledGraph apply_edit_prefix(const LabeledGraph& g, const LabeledGraph& h, const EditPath& path,
                               std::size_t k) {
  if (k == 0) return g;
  if (k >= path.size()) return h;
  using T = EditOperation::Type;
  std::size_t n1 = g.num_nodes(), n2 = h.num_nodes();
  // Nodes are keyed so that the final order is the target's: mapped source
  // node u -> mapping[u], deleted source node u -> n2 + u, inserted target v -> v.
  std::size_t keys = n2 + n1;
  std::vector<char> alive(keys, 0);
  std::vector<int> label(keys, 0);
  std::vector<std::uint8_t> adj(keys * keys, 0);
  auto source_key = [&](std::size_t u) {
    long m = path.mapping[u];
    return m >= 0 ? static_cast<std::size_t>(m) : n2 + u;
  };
  for (std::size_t u = 0; u < n1; ++u) {
    alive[source_key(u)] = 1;
    label[source_key(u)] = g.label(u);
  }
  for (auto [u, w] : g.edges()) {
    std::size_t a = source_key(u), b = source_key(w);
    adj[a * keys + b] = adj[b * keys + a] = 1;
  }
  for (std::size_t i = 0; i < k; ++i) {
    const auto& op = path.operations[i];
    switch (op.type) {
      case T::DeleteEdge: {
        std::size_t a = source_key(op.u), b = source_key(op.v);
        adj[a * keys + b] = adj[b * keys + a] = 0;
        break;
      }
      case T::DeleteNode: alive[source_key(op.u)] = 0; break;
      case T::SubstituteNode: label[source_key(op.u)] = op.label; break;
      case T::InsertNode:
        alive[op.u] = 1;
        label[op.u] = op.label;
        break;
      case T::InsertEdge: adj[op.u * keys + op.v] = adj[op.v * keys + op.u] = 1; break;
    }
  }
  std::vector<std::size_t> nodes;
  for (std::size_t x = 0; x < keys; ++x)
    if (alive[x]) nodes.push_back(x);
  LabeledGraph out(nodes.size());
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    out.set_label(a, label[nodes[a]]);
    for (std::size_t b = a + 1; b < nodes.size(); ++b)
      if (adj[nodes[a] * keys + nodes[b]]) out.add_edge(a, b);
  }
  return out;
}

LabeledGraph edit_geodesic_sample(const LabeledGraph& g, const LabeledGraph& h, double t,
                                  const GedOptions& options) {
  GedResult r = graph_edit_distance(g, h, options);
  return apply_edit_prefix(g, h, r.path, edit_steps_at(t, r.path.size()));
}

}  // namespace lsm
