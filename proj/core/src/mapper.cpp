#include "lsmapper/mapper.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iterator>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "lsmapper/error.hpp"

namespace lsm {
namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

template <typename F>
void for_each_subset_of_size(const std::vector<std::size_t>& ids, std::size_t lo, std::size_t hi, F&& f) {
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() >= lo) f(static_cast<const std::vector<std::size_t>&>(cur));
    if (cur.size() == hi) return;
    for (std::size_t i = start; i < ids.size(); ++i) {
      cur.push_back(ids[i]);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace

std::vector<NodePair> MapperComplex::edges() const {
  std::vector<NodePair> out;
  for (const auto& s : simplices)
    if (s.nodes.size() == 2) out.emplace_back(s.nodes[0], s.nodes[1]);
  std::sort(out.begin(), out.end());
  return out;
}

MapperComplex build_mapper(const ValuedGraph& graph, const Cover& cover, const MapperOptions& options) {
  const std::size_t n = graph.num_nodes;
  if (graph.values.size() != n)
    throw Error(ErrorKind::Assignment, "build_mapper: one value per graph node is required");

  std::vector<std::size_t> offset(n + 1, 0);
  std::vector<std::size_t> element;  // slot -> cover element
  std::vector<std::size_t> uncovered;
  for (std::size_t v = 0; v < n; ++v) {
    auto m = cover.membership(graph.values[v]);
    if (m.empty()) uncovered.push_back(v);
    element.insert(element.end(), m.begin(), m.end());
    offset[v + 1] = element.size();
  }
  if (!uncovered.empty()) {
    std::string list;
    for (std::size_t i = 0; i < std::min<std::size_t>(uncovered.size(), 10); ++i)
      list += (i ? ", " : "") + std::to_string(uncovered[i]);
    if (uncovered.size() > 10) list += ", ...";
    throw Error(ErrorKind::Coverage, "cover misses " + std::to_string(uncovered.size()) +
                                         " graph nodes: " + list);
  }

  UnionFind uf(element.size());
  for (auto [u, v] : graph.edges) {
    // Both slot ranges are sorted by element id: merge them.
    std::size_t i = offset[u], j = offset[v];
    while (i < offset[u + 1] && j < offset[v + 1]) {
      if (element[i] < element[j]) ++i;
      else if (element[j] < element[i]) ++j;
      else uf.unite(i++, j++);
    }
  }

  // Components keyed by (element, smallest member): slots are visited by
  // increasing node id, so the first slot seen of a component is its minimum.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> key_of_root;
  std::vector<std::pair<std::size_t, std::size_t>> slot_key(element.size());
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t s = offset[v]; s < offset[v + 1]; ++s) {
      std::size_t root = uf.find(s);
      auto it = key_of_root.find({root, 0});
      if (it == key_of_root.end()) it = key_of_root.emplace(std::pair{root, 0}, v).first;
      slot_key[s] = {element[s], it->second};
    }
  }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> node_of_key;
  for (const auto& k : slot_key) node_of_key.emplace(k, 0);
  MapperComplex mc;
  mc.max_dimension = options.max_dimension;
  for (auto& [k, id] : node_of_key) {
    id = mc.nodes.size();
    MapperNode node;
    node.id = id;
    node.cover_element = k.first;
    mc.nodes.push_back(std::move(node));
  }
  std::vector<std::size_t> slot_node(element.size());
  for (std::size_t s = 0; s < element.size(); ++s) slot_node[s] = node_of_key[slot_key[s]];
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t s = offset[v]; s < offset[v + 1]; ++s) mc.nodes[slot_node[s]].members.push_back(v);

  std::map<std::vector<std::size_t>, std::vector<std::size_t>> simplices;
  std::vector<std::size_t> ids;
  for (std::size_t v = 0; v < n; ++v) {
    if (offset[v + 1] - offset[v] < 2) continue;
    ids.assign(slot_node.begin() + static_cast<long>(offset[v]), slot_node.begin() + static_cast<long>(offset[v + 1]));
    std::sort(ids.begin(), ids.end());
    for_each_subset_of_size(ids, 2, options.max_dimension + 1,
                            [&](const std::vector<std::size_t>& s) { simplices[s].push_back(v); });
  }
  for (auto& [nodes, witnesses] : simplices) mc.simplices.push_back({nodes, std::move(witnesses)});
  return mc;
}

MapperComplex build_mapper(const SubdividedGraph& graph, const Cover& cover, const MapperOptions& options) {
  return build_mapper(graph.as_valued_graph(), cover, options);
}

void assign_representatives(MapperComplex& mapper, const FilterAssignment& values, const Cover& cover,
                            bool require_distinct) {
  std::unordered_set<std::string> used;
  for (auto& node : mapper.nodes) {
    if (node.members.empty()) throw Error(ErrorKind::Representative, "mapper node without members");
    node.representative.reset();
    for (std::size_t m : node.members) {
      if (used.insert(encode(values[m])).second) {
        node.representative = values[m];
        break;
      }
    }
    if (node.representative) continue;
    const Element& base = values[node.members.front()];
    if (values.codomain && values.codomain->is_euclidean()) {
      // Step off the shared value towards another member (or the element's
      // anchor) by the smallest step that yields an unused value.
      std::vector<Element> targets;
      for (std::size_t m : node.members)
        if (encode(values[m]) != encode(base)) {
          targets.push_back(values[m]);
          break;
        }
      targets.push_back(cover.anchor(node.cover_element));
      for (const auto& target : targets) {
        if (encode(target) == encode(base)) continue;
        // Steps are multiples of a tiny unit, so the first free one is the
        // smallest on that grid; each earlier node can block at most one.
        for (std::size_t k = 1; k <= mapper.nodes.size() + 1 && !node.representative; ++k) {
          double t = std::min(1e-12 * static_cast<double>(k), 0.5);
          Element z = values.codomain->geodesic_sample(base, target, t);
          if (!used.count(encode(z)) && cover.contains(node.cover_element, z)) {
            used.insert(encode(z));
            node.representative = std::move(z);
          }
        }
        if (node.representative) break;
      }
    }
    if (node.representative) continue;
    if (require_distinct) {
      throw Error(ErrorKind::Representative, "mapper node " + std::to_string(node.id) +
                                                 ": every member value is already used by another node");
    }
    node.representative = base;
  }
}

Betti betti_numbers(const MapperComplex& mapper) {
  auto e = mapper.edges();
  std::size_t v = mapper.nodes.size();
  std::size_t b0 = count_components(v, e);
  return {b0, e.size() + b0 - v};
}

Betti homology_betti_numbers(const MapperComplex& mapper) {
  auto e = mapper.edges();
  Betti b = betti_numbers(mapper);
  std::map<NodePair, std::size_t> index;
  for (std::size_t i = 0; i < e.size(); ++i) index.emplace(e[i], i);
  // Sparse GF(2) elimination: each stored row is keyed by its largest edge.
  std::map<std::size_t, std::vector<std::size_t>> pivots;
  for (const auto& sx : mapper.simplices) {
    if (sx.nodes.size() != 3) continue;
    const auto& t = sx.nodes;
    std::vector<std::size_t> row{index.at({t[0], t[1]}), index.at({t[0], t[2]}), index.at({t[1], t[2]})};
    std::sort(row.begin(), row.end());
    while (!row.empty()) {
      auto it = pivots.find(row.back());
      if (it == pivots.end()) {
        pivots.emplace(row.back(), std::move(row));
        break;
      }
      std::vector<std::size_t> sum;
      std::set_symmetric_difference(row.begin(), row.end(), it->second.begin(), it->second.end(),
                                    std::back_inserter(sum));
      row = std::move(sum);
    }
  }
  b.b1 -= pivots.size();
  return b;
}

namespace {

nlohmann::ordered_json element_json(const Element& z) {
  if (const auto* v = std::get_if<Vector>(&z)) return *v;
  const auto& g = std::get<LabeledGraph>(z);
  nlohmann::ordered_json j;
  j["nodes"] = g.num_nodes();
  j["labels"] = g.labels();
  auto& edges = j["edges"] = nlohmann::ordered_json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return j;
}

Element element_from_json(const nlohmann::json& j) {
  if (j.is_array()) return j.get<Vector>();
  LabeledGraph g(j.at("nodes").get<std::size_t>(), j.at("labels").get<std::vector<int>>());
  for (const auto& e : j.at("edges")) g.add_edge(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
  return g;
}

std::string fill_color(double x) {
  // Blue (low) to red (high) through the hue circle, as graphviz "H S V".
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << 0.667 * (1.0 - std::clamp(x, 0.0, 1.0)) << " 0.700 0.950";
  return out.str();
}

}  // namespace

std::string export_mapper(const MapperComplex& mapper, MapperFormat format, const std::vector<double>* colors) {
  if (format == MapperFormat::Json) {
    nlohmann::ordered_json j;
    j["max_dimension"] = mapper.max_dimension;
    auto& nodes = j["nodes"] = nlohmann::ordered_json::array();
    for (const auto& n : mapper.nodes) {
      nlohmann::ordered_json o;
      o["id"] = n.id;
      o["cover"] = n.cover_element;
      o["members"] = n.members;
      o["rep"] = n.representative ? element_json(*n.representative) : nlohmann::ordered_json(nullptr);
      nodes.push_back(std::move(o));
    }
    auto& simplices = j["simplices"] = nlohmann::ordered_json::array();
    auto& witnesses = j["witnesses"] = nlohmann::ordered_json::array();
    for (const auto& s : mapper.simplices) {
      simplices.push_back(s.nodes);
      witnesses.push_back(s.witnesses);
    }
    return j.dump(2);
  }
  if (colors && colors->size() != mapper.nodes.size())
    throw Error(ErrorKind::Parameter, "export_mapper: one color value per node is required");
  double lo = 0.0, hi = 1.0;
  if (colors && !colors->empty()) {
    lo = *std::min_element(colors->begin(), colors->end());
    hi = *std::max_element(colors->begin(), colors->end());
  }
  std::ostringstream out;
  out << std::setprecision(17);
  out << "graph mapper {\n";
  for (const auto& n : mapper.nodes) {
    out << "  " << n.id << " [label=\"U" << n.cover_element << " (" << n.members.size() << ")\"";
    if (colors) {
      double x = (*colors)[n.id];
      double unit = hi > lo ? (x - lo) / (hi - lo) : 0.5;
      out << ", value=" << x << ", style=filled, fillcolor=\"" << fill_color(unit) << "\"";
    }
    out << "];\n";
  }
  for (auto [a, b] : mapper.edges()) out << "  " << a << " -- " << b << ";\n";
  out << "}\n";
  return out.str();
}

MapperFormat parse_mapper_format(const std::string& name) {
  if (name == "dot") return MapperFormat::Dot;
  if (name == "json") return MapperFormat::Json;
  throw Error(ErrorKind::Parameter, "unknown mapper format '" + name + "' (expected dot or json)");
}

MapperComplex mapper_from_json(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    MapperComplex mc;
    mc.max_dimension = j.value("max_dimension", std::size_t{2});
    for (const auto& o : j.at("nodes")) {
      MapperNode n;
      n.id = o.at("id").get<std::size_t>();
      n.cover_element = o.at("cover").get<std::size_t>();
      n.members = o.at("members").get<std::vector<std::size_t>>();
      if (!o.at("rep").is_null()) n.representative = element_from_json(o.at("rep"));
      mc.nodes.push_back(std::move(n));
    }
    const auto& simplices = j.at("simplices");
    for (std::size_t i = 0; i < simplices.size(); ++i) {
      MapperSimplex s;
      s.nodes = simplices[i].get<std::vector<std::size_t>>();
      if (j.contains("witnesses")) s.witnesses = j["witnesses"].at(i).get<std::vector<std::size_t>>();
      mc.simplices.push_back(std::move(s));
    }
    return mc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Format, std::string("mapper json: ") + e.what());
  }
}

bool operator==(const MapperNode& a, const MapperNode& b) {
  return a.id == b.id && a.cover_element == b.cover_element && a.members == b.members &&
         a.representative == b.representative;
}

bool operator==(const MapperSimplex& a, const MapperSimplex& b) {
  return a.nodes == b.nodes && a.witnesses == b.witnesses;
}

bool operator==(const MapperComplex& a, const MapperComplex& b) {
  return a.max_dimension == b.max_dimension && a.nodes == b.nodes && a.simplices == b.simplices;
}

CanonicalMapper canonical_form(const MapperComplex& mapper, const SubdividedGraph& graph) {
  std::vector<CanonicalMapper::Key> keys(mapper.nodes.size());
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> runs;  // (element, edge) -> count
  for (std::size_t i = 0; i < mapper.nodes.size(); ++i) {
    const auto& n = mapper.nodes[i];
    auto& k = keys[i];
    k.cover_element = n.cover_element;
    for (std::size_t m : n.members)
      if (graph.is_original(m)) k.originals.push_back(m);
    if (k.originals.empty() && !n.members.empty()) {
      // Without an original member the component lies inside one base edge;
      // nodes are ordered by smallest member, i.e. along the edge.
      std::size_t e = graph.node_info(n.members.front()).edge;
      k.interior_edge = static_cast<long>(e);
      k.ordinal = runs[{n.cover_element, e}]++;
    }
  }
  std::vector<std::size_t> order(keys.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  std::vector<std::size_t> rank(keys.size());
  CanonicalMapper out;
  for (std::size_t r = 0; r < order.size(); ++r) {
    rank[order[r]] = r;
    out.nodes.push_back(keys[order[r]]);
  }
  for (const auto& s : mapper.simplices) {
    std::vector<std::size_t> t;
    for (std::size_t v : s.nodes) t.push_back(rank[v]);
    std::sort(t.begin(), t.end());
    out.simplices.push_back(std::move(t));
  }
  std::sort(out.simplices.begin(), out.simplices.end());
  return out;
}

}  // namespace lsm
