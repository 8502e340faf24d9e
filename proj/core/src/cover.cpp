#include "lsmapper/cover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "lsmapper/codomains.hpp"
#include "lsmapper/error.hpp"

namespace lsm {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

// Intersects [lo, hi] with {t : c0 + t (c1 - c0) <= bound}.
void clip_affine(double c0, double c1, double bound, double& lo, double& hi) {
  double slope = c1 - c0;
  if (slope == 0.0) {
    if (c0 > bound) hi = -1.0;
    return;
  }
  double t = (bound - c0) / slope;
  if (slope > 0) hi = std::min(hi, t);
  else lo = std::max(lo, t);
}

// Indices of the intervals containing x, ascending.
std::vector<std::size_t> containing(const std::vector<Interval>& axis, double x) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < axis.size(); ++i)
    if (axis[i].contains(x)) out.push_back(i);
  return out;
}

template <typename F>
void for_each_product(const std::vector<std::vector<std::size_t>>& choices, F&& f) {
  for (const auto& c : choices)
    if (c.empty()) return;
  std::vector<std::size_t> pos(choices.size(), 0), cell(choices.size());
  while (true) {
    for (std::size_t k = 0; k < choices.size(); ++k) cell[k] = choices[k][pos[k]];
    f(cell);
    std::size_t k = 0;
    while (k < choices.size() && ++pos[k] == choices[k].size()) pos[k++] = 0;
    if (k == choices.size()) return;
  }
}

}  // namespace

Cover Cover::hypercube(std::vector<std::vector<Interval>> axes,
                       std::vector<std::vector<std::size_t>> cells) {
  Cover c;
  c.kind_ = CoverKind::Hypercube;
  c.axes_ = std::move(axes);
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  for (auto& cell : cells) {
    if (cell.size() != c.axes_.size()) throw Error(ErrorKind::Parameter, "hypercube cell has wrong arity");
    CoverElement e;
    e.id = c.elements_.size();
    for (std::size_t k = 0; k < cell.size(); ++k) {
      if (cell[k] >= c.axes_[k].size()) throw Error(ErrorKind::Parameter, "hypercube cell index out of range");
      e.lower.push_back(c.axes_[k][cell[k]].lo);
      e.upper.push_back(c.axes_[k][cell[k]].hi);
    }
    c.cell_index_.emplace(cell, e.id);
    e.cell = std::move(cell);
    c.elements_.push_back(std::move(e));
  }
  return c;
}

Cover Cover::thickened_voronoi(std::vector<Element> germs, double epsilon, ThickeningRule rule,
                               LengthSpacePtr codomain) {
  if (germs.empty()) throw Error(ErrorKind::Parameter, "voronoi cover needs at least one germ");
  if (!(epsilon >= 0.0)) throw Error(ErrorKind::Parameter, "voronoi cover: epsilon must be >= 0");
  if (!codomain) throw Error(ErrorKind::Parameter, "voronoi cover: missing codomain");
  if (rule == ThickeningRule::Halfspace && !codomain->is_euclidean())
    throw Error(ErrorKind::Parameter, "halfspace thickening needs a vector codomain");
  Cover c;
  c.kind_ = CoverKind::ThickenedVoronoi;
  c.germs_ = std::move(germs);
  c.epsilon_ = epsilon;
  c.rule_ = rule;
  c.codomain_ = std::move(codomain);
  for (std::size_t j = 0; j < c.germs_.size(); ++j) {
    c.codomain_->validate(c.germs_[j]);
    CoverElement e;
    e.id = j;
    e.germ = j;
    c.elements_.push_back(std::move(e));
    if (rule == ThickeningRule::Halfspace) {
      const Vector& g = as_vector(c.germs_[j]);
      c.germ_sq_norms_.push_back(dot(g, g));
    }
  }
  if (rule == ThickeningRule::Halfspace) {
    std::size_t k = c.germs_.size();
    c.germ_gaps_.assign(k * k, 0.0);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        c.germ_gaps_[a * k + b] = euclidean_distance(as_vector(c.germs_[a]), as_vector(c.germs_[b]));
  }
  return c;
}

// Inner products <z, g_k> for every germ.
std::vector<double> Cover::halfspace_scores(const Vector& z) const {
  std::vector<double> ip(germs_.size());
  for (std::size_t k = 0; k < germs_.size(); ++k) ip[k] = dot(z, as_vector(germs_[k]));
  return ip;
}

namespace {

// Signed distance past the mediator of (g_j, g_k), positive on g_k's side,
// from the inner products of the point with both germs.
double mediator_score(double ip_j, double ip_k, double sq_j, double sq_k, double norm_jk) {
  return (ip_k - ip_j - 0.5 * (sq_k - sq_j)) / norm_jk;
}

}  // namespace

// Germs within 2 epsilon of the nearest one. Germs are visited by ascending
// lower bound, and the scan stops once no remaining germ can qualify or beat
// the current minimum, so the result matches the full scan exactly.
std::vector<std::size_t> Cover::germ_distance_members(const Element& z) const {
  const std::size_t k = germs_.size();
  std::vector<std::pair<double, std::size_t>> order(k);
  for (std::size_t j = 0; j < k; ++j) order[j] = {codomain_->distance_lower_bound(z, germs_[j]), j};
  std::sort(order.begin(), order.end());
  std::vector<std::pair<std::size_t, double>> seen;
  double best = std::numeric_limits<double>::infinity();
  for (auto [lb, j] : order) {
    if (lb > best + 2.0 * epsilon_ + kTolerance) break;
    double d = codomain_->distance(z, germs_[j]);
    best = std::min(best, d);
    seen.emplace_back(j, d);
  }
  std::vector<std::size_t> out;
  for (auto [j, d] : seen)
    if (d <= best + 2.0 * epsilon_ + kTolerance) out.push_back(j);
  std::sort(out.begin(), out.end());
  return out;
}

bool Cover::contains(std::size_t id, const Element& z) const {
  const CoverElement& e = elements_.at(id);
  if (kind_ == CoverKind::Hypercube) {
    const Vector& x = as_vector(z);
    if (x.size() != e.lower.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k)
      if (!Interval{e.lower[k], e.upper[k]}.contains(x[k])) return false;
    return true;
  }
  if (rule_ == ThickeningRule::GermDistance) {
    auto m = germ_distance_members(z);
    return std::binary_search(m.begin(), m.end(), id);
  }
  auto ip = halfspace_scores(as_vector(z));
  for (std::size_t k = 0; k < germs_.size(); ++k) {
    if (k == e.germ) continue;
    double norm = germ_gap(e.germ, k);
    if (norm == 0.0) continue;
    double s = mediator_score(ip[e.germ], ip[k], germ_sq_norms_[e.germ], germ_sq_norms_[k], norm);
    if (s > epsilon_ + kTolerance) return false;
  }
  return true;
}

std::vector<std::size_t> Cover::membership(const Element& z) const {
  std::vector<std::size_t> out;
  if (kind_ == CoverKind::Hypercube) {
    const Vector& x = as_vector(z);
    if (x.size() != axes_.size()) return out;
    std::vector<std::vector<std::size_t>> choices(axes_.size());
    for (std::size_t k = 0; k < axes_.size(); ++k) choices[k] = containing(axes_[k], x[k]);
    for_each_product(choices, [&](const std::vector<std::size_t>& cell) {
      auto it = cell_index_.find(cell);
      if (it != cell_index_.end()) out.push_back(it->second);
    });
    std::sort(out.begin(), out.end());
    return out;
  }
  if (rule_ == ThickeningRule::GermDistance) return germ_distance_members(z);
  auto ip = halfspace_scores(as_vector(z));
  for (std::size_t j = 0; j < germs_.size(); ++j) {
    bool in = true;
    for (std::size_t k = 0; k < germs_.size() && in; ++k) {
      if (k == j) continue;
      double norm = germ_gap(j, k);
      if (norm == 0.0) continue;
      if (mediator_score(ip[j], ip[k], germ_sq_norms_[j], germ_sq_norms_[k], norm) > epsilon_ + kTolerance)
        in = false;
    }
    if (in) out.push_back(j);
  }
  return out;
}

bool Cover::supports_exact_segments() const noexcept {
  if (kind_ == CoverKind::Hypercube) return true;
  return rule_ == ThickeningRule::Halfspace;
}

std::optional<Interval> Cover::segment_interval(std::size_t id, const Vector& a, const Vector& b) const {
  if (!supports_exact_segments())
    throw Error(ErrorKind::Parameter, "segment clipping needs convex cover elements");
  const CoverElement& e = elements_.at(id);
  double lo = 0.0, hi = 1.0;
  if (kind_ == CoverKind::Hypercube) {
    for (std::size_t k = 0; k < a.size() && lo <= hi; ++k) {
      clip_affine(a[k], b[k], e.upper[k] + kTolerance, lo, hi);
      clip_affine(-a[k], -b[k], -(e.lower[k] - kTolerance), lo, hi);
    }
  } else {
    auto ipa = halfspace_scores(a);
    auto ipb = halfspace_scores(b);
    for (std::size_t k = 0; k < germs_.size() && lo <= hi; ++k) {
      if (k == e.germ) continue;
      double norm = germ_gap(e.germ, k);
      if (norm == 0.0) continue;
      double sa = mediator_score(ipa[e.germ], ipa[k], germ_sq_norms_[e.germ], germ_sq_norms_[k], norm);
      double sb = mediator_score(ipb[e.germ], ipb[k], germ_sq_norms_[e.germ], germ_sq_norms_[k], norm);
      clip_affine(sa, sb, epsilon_ + kTolerance, lo, hi);
    }
  }
  if (lo > hi) return std::nullopt;
  return Interval{lo, hi};
}

std::vector<std::size_t> Cover::segment_candidates(const Vector& a, const Vector& b) const {
  std::vector<std::size_t> out;
  if (kind_ != CoverKind::Hypercube) {
    for (std::size_t j = 0; j < elements_.size(); ++j) out.push_back(j);
    return out;
  }
  std::vector<std::vector<std::size_t>> choices(axes_.size());
  for (std::size_t k = 0; k < axes_.size(); ++k) {
    double lo = std::min(a[k], b[k]), hi = std::max(a[k], b[k]);
    for (std::size_t i = 0; i < axes_[k].size(); ++i)
      if (axes_[k][i].hi + kTolerance >= lo && axes_[k][i].lo - kTolerance <= hi) choices[k].push_back(i);
  }
  for_each_product(choices, [&](const std::vector<std::size_t>& cell) {
    auto it = cell_index_.find(cell);
    if (it != cell_index_.end()) out.push_back(it->second);
  });
  std::sort(out.begin(), out.end());
  return out;
}

Element Cover::anchor(std::size_t id) const {
  const CoverElement& e = elements_.at(id);
  if (kind_ == CoverKind::Hypercube) {
    Vector c(e.lower.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = 0.5 * (e.lower[k] + e.upper[k]);
    return c;
  }
  return germs_[e.germ];
}

std::vector<Interval> axis_intervals(double lo, double hi, double r, double g) {
  if (!(r > 0.0)) throw Error(ErrorKind::Parameter, "hypercube cover: resolution must be positive");
  if (!(g >= 0.0 && g < 1.0)) throw Error(ErrorKind::Parameter, "hypercube cover: gain must lie in [0, 1)");
  if (hi < lo) throw Error(ErrorKind::Parameter, "hypercube cover: empty axis range");
  double stride = r * (1.0 - g);
  double start = lo - 0.5 * r * g;
  double slack = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
  std::vector<Interval> out;
  for (std::size_t i = 0;; ++i) {
    double a = start + static_cast<double>(i) * stride;
    out.push_back({a, a + r});
    if (a + r >= hi - slack) break;
    if (out.size() > 10'000'000) throw Error(ErrorKind::Size, "hypercube cover: too many intervals");
  }
  return out;
}

double resolution_for_interval_count(double lo, double hi, std::size_t count, double g) {
  if (count == 0) throw Error(ErrorKind::Parameter, "hypercube cover: interval count must be positive");
  if (!(g >= 0.0 && g < 1.0)) throw Error(ErrorKind::Parameter, "hypercube cover: gain must lie in [0, 1)");
  double span = hi - lo;
  if (!(span > 0.0)) return 1.0;
  return span / (static_cast<double>(count) * (1.0 - g));
}

Cover build_hypercube_cover(std::span<const Element> values, std::span<const double> resolution,
                            double gain, std::span<const NodePair> segments) {
  if (values.empty()) throw Error(ErrorKind::EmptyInput, "hypercube cover: no values");
  std::size_t p = as_vector(values[0]).size();
  if (p == 0) throw Error(ErrorKind::Parameter, "hypercube cover: values must have p >= 1");
  if (resolution.size() != p) throw Error(ErrorKind::Parameter, "hypercube cover: one resolution per axis");
  Vector lo(p, std::numeric_limits<double>::infinity()), hi(p, -std::numeric_limits<double>::infinity());
  for (const auto& z : values) {
    const Vector& x = as_vector(z);
    if (x.size() != p) throw Error(ErrorKind::Parameter, "hypercube cover: mixed value dimensions");
    for (std::size_t k = 0; k < p; ++k) {
      lo[k] = std::min(lo[k], x[k]);
      hi[k] = std::max(hi[k], x[k]);
    }
  }
  std::vector<std::vector<Interval>> axes(p);
  for (std::size_t k = 0; k < p; ++k) axes[k] = axis_intervals(lo[k], hi[k], resolution[k], gain);

  std::set<std::vector<std::size_t>> cells;
  std::vector<std::vector<std::size_t>> choices(p);
  for (const auto& z : values) {
    const Vector& x = as_vector(z);
    for (std::size_t k = 0; k < p; ++k) choices[k] = containing(axes[k], x[k]);
    for_each_product(choices, [&](const std::vector<std::size_t>& cell) { cells.insert(cell); });
  }
  if (!segments.empty()) {
    // Keep every box met by a segment between two values, so the cover
    // contains the whole piecewise-linear image of the graph.
    std::vector<std::vector<std::size_t>> all;
    std::vector<std::vector<std::size_t>> every(p);
    for (std::size_t k = 0; k < p; ++k)
      for (std::size_t i = 0; i < axes[k].size(); ++i) every[k].push_back(i);
    for_each_product(every, [&](const std::vector<std::size_t>& cell) { all.push_back(cell); });
    Cover full = Cover::hypercube(axes, std::move(all));
    for (auto [u, v] : segments) {
      const Vector& a = as_vector(values[u]);
      const Vector& b = as_vector(values[v]);
      for (std::size_t id : full.segment_candidates(a, b)) {
        auto iv = full.segment_interval(id, a, b);
        if (iv && iv->lo <= iv->hi) cells.insert(full.element(id).cell);
      }
    }
  }
  return Cover::hypercube(std::move(axes), {cells.begin(), cells.end()});
}

Cover build_hypercube_cover(std::span<const Element> values, double resolution, double gain,
                            std::span<const NodePair> segments) {
  if (values.empty()) throw Error(ErrorKind::EmptyInput, "hypercube cover: no values");
  std::vector<double> r(as_vector(values[0]).size(), resolution);
  return build_hypercube_cover(values, r, gain, segments);
}

Cover build_thickened_voronoi_cover(std::span<const Element> values, std::size_t k, double epsilon,
                                    LengthSpacePtr codomain, Rng& rng,
                                    const ThickeningOptions& options) {
  if (values.empty()) throw Error(ErrorKind::EmptyInput, "voronoi cover: no values");
  if (k == 0) throw Error(ErrorKind::Parameter, "voronoi cover: k must be positive");
  if (!codomain) throw Error(ErrorKind::Parameter, "voronoi cover: missing codomain");
  if (!(epsilon >= 0.0)) throw Error(ErrorKind::Parameter, "voronoi cover: epsilon must be >= 0");
  std::vector<Element> germs;
  if (codomain->is_euclidean()) {
    std::vector<Vector> pts;
    pts.reserve(values.size());
    for (const auto& z : values) pts.push_back(as_vector(z));
    for (auto& c : kmeans(pts, k, rng, options.kmeans).centers) germs.emplace_back(std::move(c));
  } else {
    std::vector<std::size_t> distinct;
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < values.size(); ++i)
      if (seen.insert(encode(values[i])).second) distinct.push_back(i);
    if (k > distinct.size()) {
      throw Error(ErrorKind::Parameter, "voronoi cover: k = " + std::to_string(k) + " exceeds the " +
                                            std::to_string(distinct.size()) + " distinct values");
    }
    // Partial Fisher-Yates: k uniform draws without replacement.
    for (std::size_t i = 0; i < k; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, distinct.size() - 1);
      std::swap(distinct[i], distinct[pick(rng)]);
      germs.push_back(values[distinct[i]]);
    }
  }
  double eps = epsilon;
  if (options.scale == EpsilonScale::GermSpacing && germs.size() > 1) {
    double total = 0.0;
    for (std::size_t j = 0; j < germs.size(); ++j) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t l = 0; l < germs.size(); ++l)
        if (l != j) best = std::min(best, codomain->distance(germs[j], germs[l]));
      total += 0.5 * best;
    }
    eps = epsilon * total / static_cast<double>(germs.size());
  }
  ThickeningRule rule = options.rule.value_or(codomain->is_euclidean() ? ThickeningRule::Halfspace
                                                                       : ThickeningRule::GermDistance);
  Cover cover = Cover::thickened_voronoi(std::move(germs), eps, rule, std::move(codomain));
  auto missing = uncovered_values(cover, values);
  if (!missing.empty()) {
    throw Error(ErrorKind::Coverage, "voronoi cover leaves " + std::to_string(missing.size()) +
                                         " values uncovered, first " + std::to_string(missing.front()));
  }
  return cover;
}

double resolution(const Cover& cover, std::span<const Element> values, const LengthSpace& z) {
  std::vector<std::vector<std::size_t>> members(cover.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t id : cover.membership(values[i])) members[id].push_back(i);
  double res = 0.0;
  for (const auto& m : members) {
    for (std::size_t a = 0; a < m.size(); ++a)
      for (std::size_t b = a + 1; b < m.size(); ++b) res = std::max(res, z.distance(values[m[a]], values[m[b]]));
  }
  return res;
}

std::vector<std::size_t> uncovered_values(const Cover& cover, std::span<const Element> values) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (cover.membership(values[i]).empty()) out.push_back(i);
  return out;
}

namespace {

nlohmann::ordered_json element_to_json(const Element& z) {
  if (const auto* v = std::get_if<Vector>(&z)) return *v;
  const auto& g = std::get<LabeledGraph>(z);
  nlohmann::ordered_json j;
  j["nodes"] = g.num_nodes();
  j["labels"] = g.labels();
  auto& edges = j["edges"] = nlohmann::ordered_json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return j;
}

}  // namespace

std::string cover_to_json(const Cover& cover) {
  nlohmann::ordered_json j;
  auto& elements = j["elements"] = nlohmann::ordered_json::array();
  if (cover.kind() == CoverKind::Hypercube) {
    j["kind"] = "hypercube";
    for (const auto& e : cover.elements()) {
      nlohmann::ordered_json b = nlohmann::ordered_json::array();
      for (std::size_t k = 0; k < e.lower.size(); ++k) b.push_back({e.lower[k], e.upper[k]});
      elements.push_back({{"id", e.id}, {"bounds", b}});
    }
  } else {
    j["kind"] = "thickened_voronoi";
    j["rule"] = cover.rule() == ThickeningRule::Halfspace ? "halfspace" : "germ_distance";
    for (const auto& e : cover.elements()) {
      elements.push_back(
          {{"id", e.id}, {"germ", element_to_json(cover.germs()[e.germ])}, {"epsilon", cover.epsilon()}});
    }
  }
  // Keep "kind" first for readers.
  nlohmann::ordered_json out;
  out["kind"] = j["kind"];
  if (j.contains("rule")) out["rule"] = j["rule"];
  out["elements"] = j["elements"];
  return out.dump(2);
}

}  // namespace lsm
