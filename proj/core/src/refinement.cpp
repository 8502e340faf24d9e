#include "lsmapper/refinement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <json.hpp>

#include "lsmapper/error.hpp"

namespace lsm {
namespace {

using Simplex = std::vector<std::size_t>;

// Calls f on every nonempty subset of `ids` (ascending) with at most `cap` elements.
template <typename F>
void for_each_subset(const std::vector<std::size_t>& ids, std::size_t cap, F&& f) {
  Simplex cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    for (std::size_t i = start; i < ids.size(); ++i) {
      cur.push_back(ids[i]);
      f(static_cast<const Simplex&>(cur));
      if (cur.size() < cap) self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

bool subset_of(const Simplex& s, const std::vector<std::size_t>& sorted_set) {
  return std::includes(sorted_set.begin(), sorted_set.end(), s.begin(), s.end());
}

void exact_edge(std::size_t e, const Vector& a, const Vector& b, const Cover& cover,
                const CrossingOptions& opt, std::vector<Crossing>& out) {
  double len = euclidean_distance(a, b);
  if (len == 0.0) return;
  std::vector<std::size_t> ids;
  std::vector<Interval> parts;
  for (std::size_t id : cover.segment_candidates(a, b)) {
    if (auto iv = cover.segment_interval(id, a, b)) {
      ids.push_back(id);
      parts.push_back(*iv);
    }
  }
  std::map<std::size_t, std::size_t> slot;
  for (std::size_t k = 0; k < ids.size(); ++k) slot[ids[k]] = k;
  for_each_subset(ids, opt.max_simplex_size, [&](const Simplex& s) {
    double lo = 0.0, hi = 1.0;
    for (std::size_t id : s) {
      lo = std::max(lo, parts[slot[id]].lo);
      hi = std::min(hi, parts[slot[id]].hi);
    }
    // Convex pieces: the endpoints are outside U_sigma iff the clipped
    // parameter interval stays away from 0 and 1.
    if (lo <= hi && lo > 0.0 && hi < 1.0) out.push_back({e, s, (hi - lo) * len});
  });
}

struct SampledEdge {
  std::vector<Crossing> crossings;
  std::size_t shortest_run = std::numeric_limits<std::size_t>::max();
};

SampledEdge sampled_edge(std::size_t e, const Element& a, const Element& b, const Cover& cover,
                         const LengthSpace& z, std::size_t m, std::size_t cap) {
  SampledEdge r;
  double len = z.distance(a, b);
  if (len == 0.0) return r;
  std::vector<double> ts(m + 2);
  for (std::size_t i = 0; i < m + 2; ++i) ts[i] = static_cast<double>(i) / static_cast<double>(m + 1);
  auto samples = z.geodesic_samples(a, b, ts);
  samples.front() = a;
  samples.back() = b;
  std::vector<std::vector<std::size_t>> member(m + 2);
  for (std::size_t i = 0; i < m + 2; ++i) member[i] = cover.membership(samples[i]);

  std::map<Simplex, std::size_t> best;  // simplex -> shortest run (in samples)
  std::map<Simplex, std::size_t> run;   // simplex -> current run length
  auto close = [&](const Simplex& s, std::size_t count) {
    auto [it, fresh] = best.emplace(s, count);
    if (!fresh) it->second = std::min(it->second, count);
  };
  for (std::size_t i = 1; i <= m; ++i) {
    std::map<Simplex, std::size_t> next;
    for_each_subset(member[i], cap, [&](const Simplex& s) {
      if (subset_of(s, member.front()) || subset_of(s, member.back())) return;
      auto it = run.find(s);
      next[s] = (it == run.end() ? 0 : it->second) + 1;
    });
    for (const auto& [s, count] : run)
      if (!next.count(s)) close(s, count);
    run = std::move(next);
  }
  for (const auto& [s, count] : run) close(s, count);
  double gap = len / static_cast<double>(m + 1);
  for (const auto& [s, count] : best) {
    r.crossings.push_back({e, s, static_cast<double>(count) * gap});
    r.shortest_run = std::min(r.shortest_run, count);
  }
  return r;
}

CrossingReport detect(std::span<const NodePair> edges, const FilterAssignment& values, const Cover& cover,
                      const CrossingOptions& opt) {
  if (!values.codomain) throw Error(ErrorKind::Parameter, "detect_crossings: filter has no codomain");
  if (opt.max_simplex_size == 0) throw Error(ErrorKind::Parameter, "detect_crossings: simplex cap is 0");
  bool exact_ok = values.codomain->is_euclidean() && cover.supports_exact_segments();
  bool exact = false;
  switch (opt.mode) {
    case CrossingOptions::Mode::Auto: exact = exact_ok; break;
    case CrossingOptions::Mode::Exact:
      if (!exact_ok)
        throw Error(ErrorKind::Parameter, "exact crossings need a vector codomain and a convex cover");
      exact = true;
      break;
    case CrossingOptions::Mode::Sampled: exact = false; break;
  }
  CrossingReport report;
  report.exact = exact;
  if (!exact) {
    if (opt.samples < 2) throw Error(ErrorKind::Parameter, "detect_crossings: need at least 2 samples per edge");
    report.samples = opt.samples;
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Element& a = values[edges[e].first];
    const Element& b = values[edges[e].second];
    if (exact) {
      exact_edge(e, as_vector(a), as_vector(b), cover, opt, report.crossings);
      continue;
    }
    std::size_t m = opt.samples;
    SampledEdge r = sampled_edge(e, a, b, cover, *values.codomain, m, opt.max_simplex_size);
    // A component seen by a single sample may be much shorter than one gap.
    while (opt.adaptive && r.shortest_run < 2 && m * 2 <= opt.max_samples) {
      m *= 2;
      r = sampled_edge(e, a, b, cover, *values.codomain, m, opt.max_simplex_size);
    }
    report.samples = std::max(report.samples, m);
    for (auto& c : r.crossings) report.crossings.push_back(std::move(c));
  }
  for (const auto& c : report.crossings) report.ell = std::min(report.ell, c.length);
  return report;
}

}  // namespace

CrossingReport detect_crossings(const NeighborhoodGraph& graph, const FilterAssignment& values,
                                const Cover& cover, const CrossingOptions& options) {
  if (values.size() != graph.num_vertices)
    throw Error(ErrorKind::Assignment, "detect_crossings: one filter value per vertex is required");
  std::vector<NodePair> edges;
  edges.reserve(graph.edges.size());
  for (const auto& e : graph.edges) edges.emplace_back(e.u, e.v);
  return detect(edges, values, cover, options);
}

CrossingReport detect_crossings(const SubdividedGraph& graph, const Cover& cover,
                                const CrossingOptions& options) {
  auto edges = graph.edges();
  return detect(edges, graph.values(), cover, options);
}

std::string crossing_report_to_json(const CrossingReport& report) {
  nlohmann::ordered_json j;
  j["exact"] = report.exact;
  j["samples"] = report.samples;
  if (std::isfinite(report.ell)) j["ell"] = report.ell;
  else j["ell"] = nullptr;
  auto& list = j["crossings"] = nlohmann::ordered_json::array();
  for (const auto& c : report.crossings)
    list.push_back({{"edge", c.edge}, {"simplex", c.simplex}, {"length", c.length}});
  return j.dump(2);
}

ModulusBound ModulusBound::lipschitz(double constant) {
  if (!(constant > 0.0)) throw Error(ErrorKind::Parameter, "lipschitz modulus: L must be positive");
  ModulusBound m;
  m.form_ = Form::Lipschitz;
  m.constant_ = constant;
  return m;
}

ModulusBound ModulusBound::empirical(const NeighborhoodGraph& graph, const FilterAssignment& values) {
  if (!values.codomain) throw Error(ErrorKind::Parameter, "empirical modulus: filter has no codomain");
  ModulusBound m;
  m.form_ = Form::Empirical;
  m.constant_ = 0.0;
  for (const auto& e : graph.edges) {
    double gap = values.codomain->distance(values[e.u], values[e.v]);
    if (e.length > 0.0 && gap > 0.0) {
      m.edges_.push_back({e.length, gap});
      m.constant_ = std::max(m.constant_, gap / e.length);
    }
  }
  return m;
}

double ModulusBound::operator()(double h) const {
  if (h <= 0.0) return 0.0;
  if (form_ == Form::Lipschitz) return constant_ * h;
  double w = 0.0;
  for (const auto& e : edges_) w = std::max(w, e.gap * std::min(h / e.length, 1.0));
  return w;
}

double ModulusBound::supremum() const {
  if (form_ == Form::Lipschitz) return std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (const auto& e : edges_) s = std::max(s, e.gap);
  return s;
}

bool ModulusBound::in_image(double v) const { return v >= 0.0 && v <= supremum(); }

double ModulusBound::inverse(double v) const {
  if (v <= 0.0) return 0.0;
  if (form_ == Form::Lipschitz) return v / constant_;
  double h = std::numeric_limits<double>::infinity();
  for (const auto& e : edges_)
    if (e.gap >= v) h = std::min(h, v * e.length / e.gap);
  return h;
}

ModulusBound lipschitz_modulus(double constant) { return ModulusBound::lipschitz(constant); }

std::size_t calibrate_s(double delta_n, const CrossingReport& report, const ModulusBound& omega,
                        std::size_t s_max) {
  if (!report.has_crossings() || !std::isfinite(report.ell)) return 0;
  if (report.ell <= 0.0) return s_max;
  double v = report.ell / 2.0;
  if (!omega.in_image(v)) return 0;
  double h = omega.inverse(v);
  if (!(h > 0.0)) return s_max;
  double s = std::floor(delta_n / h + 1e-12);
  if (!(s >= 0.0)) return 0;
  if (s >= static_cast<double>(s_max)) return s_max;
  return static_cast<std::size_t>(s);
}

}  // namespace lsm
