#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "lsmapper/graph.hpp"
#include "lsmapper/mapper.hpp"
#include "lsmapper/types.hpp"

namespace lsm {

inline constexpr double kDisconnected = std::numeric_limits<double>::infinity();

enum class MinimaxMode {
  /// Scalar values only: search over value windows [a, a + D].
  ExactScalar,
  /// Enumerates simple paths; at most 12 nodes.
  ExactBruteforce,
  /// Certified bracket from ball-restricted connectivity, any codomain.
  Sandwich,
};

/// Smallest diameter (in the codomain) of the node values along a path.
struct MinimaxResult {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool exact = true;
  std::vector<std::size_t> witness;  // path realizing `upper`

  bool connected() const noexcept { return value != kDisconnected; }
};

inline constexpr std::size_t kBruteforceNodeLimit = 12;

MinimaxResult minimax_path_distance(const ValuedGraph& graph, std::size_t from, std::size_t to,
                                    MinimaxMode mode);

/// Exact scalar minimax between every pair of `targets`, paths through all
/// nodes. Row-major |targets| x |targets|; kDisconnected for separated pairs.
std::vector<double> minimax_all_pairs_scalar(const ValuedGraph& graph,
                                             std::span<const std::size_t> targets);

/// Finite pseudometric on a node subset. Disconnected pairs receive the
/// surrogate (largest finite distance + diameter of the values) and are
/// listed in `surrogate_pairs`.
struct PseudometricMatrix {
  FinitePseudometricSpace space;
  std::vector<NodePair> surrogate_pairs;
  bool exact = true;
};

PseudometricMatrix valued_graph_pseudometric(const ValuedGraph& graph,
                                             std::span<const std::size_t> nodes,
                                             MinimaxMode mode);
/// Mapper 1-skeleton with representatives as node values.
PseudometricMatrix mapper_pseudometric_matrix(const MapperComplex& mapper,
                                              const LengthSpacePtr& codomain, MinimaxMode mode);
/// Original nodes of a subdivided graph; paths run through subdivision nodes.
PseudometricMatrix graph_pseudometric_matrix(const SubdividedGraph& graph, MinimaxMode mode);

ValuedGraph mapper_valued_graph(const MapperComplex& mapper, const LengthSpacePtr& codomain);

struct ReebQuotient {
  ValuedGraph graph;
  std::vector<std::size_t> projection;  // input node -> class
};

/// Merges nodes whose values are within tol and that are connected inside the
/// corresponding level set. Classes are numbered by smallest member.
ReebQuotient discrete_reeb_quotient(const ValuedGraph& graph, double tol = 0.0);

inline constexpr std::size_t kGromovHausdorffOracleLimit = 6;

/// Exact Gromov-Hausdorff distance by branch and bound over correspondences.
/// Both spaces must have at most kGromovHausdorffOracleLimit points.
double gromov_hausdorff_exact(const FinitePseudometricSpace& a, const FinitePseudometricSpace& b);

/// |diam(a) - diam(b)| / 2.
double gh_lower_bound(const FinitePseudometricSpace& a, const FinitePseudometricSpace& b);

/// Max metric distortion of a correspondence given as (i, j) pairs.
double correspondence_distortion(const FinitePseudometricSpace& a, const FinitePseudometricSpace& b,
                                 std::span<const NodePair> pairs);

}  // namespace lsm
