#include "lsmapper/codomains.hpp"

#include <algorithm>
#include <cmath>

#include "lsmapper/error.hpp"

namespace lsm {

EuclideanCodomain::EuclideanCodomain(std::size_t p) : p_(p) {
  if (p == 0) throw Error(ErrorKind::Parameter, "euclidean codomain needs p >= 1");
}

std::string EuclideanCodomain::name() const { return "euclidean(" + std::to_string(p_) + ")"; }

double EuclideanCodomain::distance(const Element& a, const Element& b) const {
  return euclidean_distance(as_vector(a), as_vector(b));
}

Element EuclideanCodomain::geodesic_sample(const Element& a, const Element& b, double t) const {
  const Vector& x = as_vector(a);
  const Vector& y = as_vector(b);
  // Exact endpoints: (1-t)x + ty can round away from x or y at t = 0 or 1.
  if (t <= 0.0) return x;
  if (t >= 1.0) return y;
  Vector z(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) z[k] = (1.0 - t) * x[k] + t * y[k];
  return z;
}

void EuclideanCodomain::validate(const Element& z) const {
  const Vector& v = as_vector(z);
  if (v.size() != p_) {
    throw Error(ErrorKind::Assignment, name() + ": element has " + std::to_string(v.size()) +
                                           " coordinates");
  }
  for (double x : v)
    if (!std::isfinite(x)) throw Error(ErrorKind::Assignment, name() + ": non-finite coordinate");
}

std::string HistogramCodomain::name() const {
  return "histogram(" + std::to_string(dimension()) + ")";
}

void HistogramCodomain::validate(const Element& z) const {
  EuclideanCodomain::validate(z);
  double sum = 0.0;
  for (double x : as_vector(z)) {
    if (x < -kTolerance || x > 1.0 + kTolerance)
      throw Error(ErrorKind::Assignment, name() + ": bin mass outside [0, 1]");
    sum += x;
  }
  if (sum > 1.0 + kTolerance) throw Error(ErrorKind::Assignment, name() + ": total mass exceeds 1");
}

std::string GraphCodomain::name() const { return "graph-edit"; }

namespace {

// Orders the pair so that both argument orders run the same search.
bool swapped(const Element& a, const Element& b) { return encode(b) < encode(a); }

}  // namespace

double GraphCodomain::distance(const Element& a, const Element& b) const {
  const auto& g = as_graph(a);
  const auto& h = as_graph(b);
  if (g == h) return 0.0;
  if (swapped(a, b)) return static_cast<double>(graph_edit_distance(h, g, options_).distance);
  return static_cast<double>(graph_edit_distance(g, h, options_).distance);
}

double GraphCodomain::distance_lower_bound(const Element& a, const Element& b) const {
  return static_cast<double>(ged_lower_bound(as_graph(a), as_graph(b)));
}

Element GraphCodomain::geodesic_sample(const Element& a, const Element& b, double t) const {
  double ts[1] = {t};
  return std::move(geodesic_samples(a, b, ts).front());
}

std::vector<Element> GraphCodomain::geodesic_samples(const Element& a, const Element& b,
                                                     std::span<const double> ts) const {
  const auto& g = as_graph(a);
  const auto& h = as_graph(b);
  std::vector<Element> out;
  out.reserve(ts.size());
  if (g == h) {
    for (std::size_t i = 0; i < ts.size(); ++i) out.emplace_back(g);
    return out;
  }
  // A swapped pair walks the path computed from b to a backwards.
  bool rev = swapped(a, b);
  const auto& src = rev ? h : g;
  const auto& dst = rev ? g : h;
  GedResult r = graph_edit_distance(src, dst, options_);
  std::size_t L = r.path.size();
  for (double t : ts) {
    std::size_t k = edit_steps_at(t, L);
    out.emplace_back(apply_edit_prefix(src, dst, r.path, rev ? L - k : k));
  }
  return out;
}

void GraphCodomain::validate(const Element& z) const {
  const auto& g = as_graph(z);
  if (g.num_nodes() > options_.budget) {
    throw Error(ErrorKind::Size, "graph codomain: " + std::to_string(g.num_nodes()) +
                                     " nodes exceed the budget of " + std::to_string(options_.budget));
  }
}

std::size_t edit_steps_at(double t, std::size_t length) {
  if (t <= 0.0) return 0;
  if (t >= 1.0) return length;
  auto k = static_cast<std::size_t>(std::floor(t * static_cast<double>(length) + 1e-12));
  return std::min(k, length);
}

}  // namespace lsm
