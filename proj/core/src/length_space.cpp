#include "lsmapper/length_space.hpp"

#include <algorithm>
#include <cstring>

#include "lsmapper/error.hpp"

namespace lsm {

std::string encode(const Element& z) {
  std::string out;
  if (const auto* v = std::get_if<Vector>(&z)) {
    out.resize(1 + v->size() * sizeof(double));
    out[0] = 'v';
    if (!v->empty()) std::memcpy(out.data() + 1, v->data(), v->size() * sizeof(double));
    return out;
  }
  const auto& g = std::get<LabeledGraph>(z);
  std::size_t n = g.num_nodes();
  out.push_back('g');
  out.append(reinterpret_cast<const char*>(&n), sizeof(n));
  for (int label : g.labels()) out.append(reinterpret_cast<const char*>(&label), sizeof(label));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) out.push_back(g.has_edge(u, v) ? '1' : '0');
  return out;
}

const Vector& as_vector(const Element& z) {
  if (const auto* v = std::get_if<Vector>(&z)) return *v;
  throw Error(ErrorKind::Parameter, "expected a vector element, got a graph");
}

const LabeledGraph& as_graph(const Element& z) {
  if (const auto* g = std::get_if<LabeledGraph>(&z)) return *g;
  throw Error(ErrorKind::Parameter, "expected a graph element, got a vector");
}

std::vector<Element> LengthSpace::geodesic_samples(const Element& a, const Element& b,
                                                   std::span<const double> ts) const {
  std::vector<Element> out;
  out.reserve(ts.size());
  for (double t : ts) out.push_back(geodesic_sample(a, b, t));
  return out;
}

double finite_set_diameter(std::span<const Element> s, const LengthSpace& z) {
  if (s.empty()) throw Error(ErrorKind::EmptyInput, "diameter of an empty set");
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) d = std::max(d, z.distance(s[i], s[j]));
  return d;
}

}  // namespace lsm
