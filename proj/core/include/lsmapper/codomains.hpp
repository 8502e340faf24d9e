#pragma once

#include <cstddef>
#include <vector>

#include "lsmapper/length_space.hpp"

namespace lsm {

/// R^p with the L2 norm; geodesics are straight segments.
class EuclideanCodomain : public LengthSpace {
 public:
  explicit EuclideanCodomain(std::size_t p);

  CodomainKind kind() const noexcept override { return CodomainKind::Euclidean; }
  std::string name() const override;
  bool is_euclidean() const noexcept override { return true; }
  std::size_t dimension() const noexcept override { return p_; }

  double distance(const Element& a, const Element& b) const override;
  Element geodesic_sample(const Element& a, const Element& b, double t) const override;
  void validate(const Element& z) const override;

 private:
  std::size_t p_;
};

/// Histograms over d bins, compared in L2. Elements live in [0,1]^d with
/// coordinate sum at most 1 (+tolerance); convex combinations stay inside.
class HistogramCodomain : public EuclideanCodomain {
 public:
  explicit HistogramCodomain(std::size_t bins) : EuclideanCodomain(bins) {}

  CodomainKind kind() const noexcept override { return CodomainKind::Histogram; }
  std::string name() const override;
  void validate(const Element& z) const override;
};

struct EditOperation {
  enum class Type { DeleteEdge, DeleteNode, SubstituteNode, InsertNode, InsertEdge };
  Type type;
  // DeleteEdge / DeleteNode / SubstituteNode use source node ids; InsertNode
  // and InsertEdge use target node ids.
  std::size_t u = 0;
  std::size_t v = 0;
  int label = 0;

  friend bool operator==(const EditOperation&, const EditOperation&) = default;
};

/// Canonical edit path: edge deletions, node deletions, substitutions, node
/// insertions, edge insertions. `mapping[u]` is the target node of source
/// node u, or -1 when u is deleted.
struct EditPath {
  std::vector<EditOperation> operations;
  std::vector<long> mapping;

  std::size_t size() const noexcept { return operations.size(); }
};

struct GedOptions {
  std::size_t budget = 32;       // max nodes per graph
  std::size_t exact_limit = 10;  // A* when both graphs have at most this many nodes
  std::size_t beam_width = 64;
};

struct GedResult {
  std::size_t distance = 0;
  EditPath path;
  bool exact = true;
};

/// Unit-cost graph edit distance from g to h. Exact (A*) in the small regime,
/// beam-search upper bound otherwise; the returned path always realizes the
/// returned cost.
GedResult graph_edit_distance(const LabeledGraph& g, const LabeledGraph& h,
                              const GedOptions& options = {});

/// Cheap lower bound on the exact edit distance: unmatched label counts plus
/// half the L1 gap between sorted degree sequences (padded with zeros).
std::size_t ged_lower_bound(const LabeledGraph& g, const LabeledGraph& h);

/// Total cost of transforming g into h under a fixed node mapping.
std::size_t edit_cost_for_mapping(const LabeledGraph& g, const LabeledGraph& h,
                                  const std::vector<long>& mapping);

/// Builds the canonical path realizing `mapping`.
EditPath edit_path_for_mapping(const LabeledGraph& g, const LabeledGraph& h,
                               const std::vector<long>& mapping);

/// Graph after applying the first k operations of `path` to g. k = 0 gives g
/// and k = path.size() gives h exactly; intermediate node order is canonical.
LabeledGraph apply_edit_prefix(const LabeledGraph& g, const LabeledGraph& h,
                               const EditPath& path, std::size_t k);

/// Graph after floor(t * L) edits of the canonical path from g to h.
LabeledGraph edit_geodesic_sample(const LabeledGraph& g, const LabeledGraph& h, double t,
                                  const GedOptions& options = {});

/// Labeled graphs under unit-cost edit distance.
class GraphCodomain : public LengthSpace {
 public:
  explicit GraphCodomain(GedOptions options = {}) : options_(options) {}

  CodomainKind kind() const noexcept override { return CodomainKind::Graph; }
  std::string name() const override;

  /// Symmetric by construction: the pair is ordered by encoding before the
  /// search runs, so beam-search approximations agree in both directions.
  double distance(const Element& a, const Element& b) const override;
  double distance_lower_bound(const Element& a, const Element& b) const override;
  Element geodesic_sample(const Element& a, const Element& b, double t) const override;
  std::vector<Element> geodesic_samples(const Element& a, const Element& b,
                                        std::span<const double> ts) const override;
  void validate(const Element& z) const override;

  const GedOptions& options() const noexcept { return options_; }

 private:
  GedOptions options_;
};

/// Number of edits after which gamma(t) is sampled on a path of length L.
std::size_t edit_steps_at(double t, std::size_t length);

}  // namespace lsm
