#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lsmapper/cover.hpp"
#include "lsmapper/graph.hpp"

namespace lsm {

struct MapperNode {
  std::size_t id = 0;
  std::size_t cover_element = 0;
  std::vector<std::size_t> members;  // graph node ids, ascending
  std::optional<Element> representative;
};

struct MapperSimplex {
  std::vector<std::size_t> nodes;      // ascending Mapper node ids
  std::vector<std::size_t> witnesses;  // graph nodes lying in every member set
};

/// Nerve of the connected components of the cover's preimages.
struct MapperComplex {
  std::vector<MapperNode> nodes;
  std::vector<MapperSimplex> simplices;  // dimension >= 1, sorted by node tuple
  std::size_t max_dimension = 2;

  /// 1-skeleton edges (i < j), ascending.
  std::vector<NodePair> edges() const;
};

struct MapperOptions {
  std::size_t max_dimension = 2;
};

/// Clusters each preimage by connected components of the induced subgraph
/// and assembles simplices from shared graph nodes. Nodes are ordered by
/// (cover element, smallest member). Throws a coverage error when a graph
/// node lies in no element.
MapperComplex build_mapper(const ValuedGraph& graph, const Cover& cover,
                           const MapperOptions& options = {});
MapperComplex build_mapper(const SubdividedGraph& graph, const Cover& cover,
                           const MapperOptions& options = {});

/// z_v = value of the smallest member whose value is not already taken by
/// an earlier node. When every member collides, vector codomains nudge the
/// value along a geodesic inside the element; discrete codomains throw unless
/// `require_distinct` is false.
void assign_representatives(MapperComplex& mapper, const FilterAssignment& values,
                            const Cover& cover, bool require_distinct = true);

struct Betti {
  std::size_t b0 = 0;
  std::size_t b1 = 0;
  friend bool operator==(const Betti&, const Betti&) = default;
};

/// Betti numbers of the 1-skeleton: components and cycle rank E - V + b0.
Betti betti_numbers(const MapperComplex& mapper);

/// Homology of the 2-skeleton over GF(2): b1 = (E - V + b0) - rank of the
/// triangle boundary map. Filled triangles do not count as cycles here.
Betti homology_betti_numbers(const MapperComplex& mapper);

enum class MapperFormat { Dot, Json };

/// `colors`, when given, holds one numeric attribute per node (DOT only).
std::string export_mapper(const MapperComplex& mapper, MapperFormat format,
                          const std::vector<double>* colors = nullptr);
MapperFormat parse_mapper_format(const std::string& name);
MapperComplex mapper_from_json(const std::string& text);

bool operator==(const MapperNode& a, const MapperNode& b);
bool operator==(const MapperSimplex& a, const MapperSimplex& b);
bool operator==(const MapperComplex& a, const MapperComplex& b);

/// Subdivision-independent description of a Mapper computed on a subdivided
/// graph. A node is keyed by its cover element and original members; nodes
/// made only of interior points of one base edge are keyed by that edge and
/// their rank along it.
struct CanonicalMapper {
  struct Key {
    std::size_t cover_element = 0;
    std::vector<std::size_t> originals;
    long interior_edge = -1;
    std::size_t ordinal = 0;
    friend auto operator<=>(const Key&, const Key&) = default;
  };
  std::vector<Key> nodes;                         // sorted
  std::vector<std::vector<std::size_t>> simplices;  // indices into nodes, sorted

  friend bool operator==(const CanonicalMapper&, const CanonicalMapper&) = default;
};

CanonicalMapper canonical_form(const MapperComplex& mapper, const SubdividedGraph& graph);

}  // namespace lsm
