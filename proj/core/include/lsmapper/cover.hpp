#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lsmapper/graph.hpp"
#include "lsmapper/length_space.hpp"

namespace lsm {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x, double tol = kTolerance) const { return x >= lo - tol && x <= hi + tol; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class CoverKind { Hypercube, ThickenedVoronoi };

/// How a Voronoi cell is thickened.
///  - GermDistance: d(z, g_j) <= min_k d(z, g_k) + 2 eps. Needs only germ
///    distances, so it works in any length space.
///  - Halfspace: for every other germ g_k, the signed distance of z past the
///    mediator of (g_j, g_k) is at most eps. Euclidean codomains only; every
///    element is convex, which allows exact segment clipping.
enum class ThickeningRule { GermDistance, Halfspace };

struct CoverElement {
  std::size_t id = 0;
  // Hypercube: closed box and its per-axis interval indices.
  std::vector<std::size_t> cell;
  Vector lower;
  Vector upper;
  // Thickened Voronoi: index of this element's germ.
  std::size_t germ = 0;
};

/// A finite family of codomain subsets given by membership predicates.
class Cover {
 public:
  Cover() = default;

  /// Hypercube cover over the product grid `axes`, keeping the listed cells.
  static Cover hypercube(std::vector<std::vector<Interval>> axes,
                         std::vector<std::vector<std::size_t>> cells);
  static Cover thickened_voronoi(std::vector<Element> germs, double epsilon, ThickeningRule rule,
                                 LengthSpacePtr codomain);

  CoverKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<CoverElement>& elements() const noexcept { return elements_; }
  const CoverElement& element(std::size_t id) const { return elements_[id]; }

  bool contains(std::size_t id, const Element& z) const;
  /// Ids (ascending) of every element containing z; empty outside the cover.
  std::vector<std::size_t> membership(const Element& z) const;

  /// True when every element is convex in R^p, so the part of a segment
  /// inside any element (or intersection of elements) is a single interval.
  bool supports_exact_segments() const noexcept;
  /// Parameter interval {t in [0,1] : (1-t) a + t b in element}, if nonempty.
  std::optional<Interval> segment_interval(std::size_t id, const Vector& a, const Vector& b) const;
  /// Elements that may meet segment [a, b] (a superset of those that do).
  std::vector<std::size_t> segment_candidates(const Vector& a, const Vector& b) const;

  /// A point guaranteed to lie inside the element.
  Element anchor(std::size_t id) const;

  const std::vector<std::vector<Interval>>& axes() const noexcept { return axes_; }
  const std::vector<Element>& germs() const noexcept { return germs_; }
  double epsilon() const noexcept { return epsilon_; }
  ThickeningRule rule() const noexcept { return rule_; }
  const LengthSpacePtr& codomain() const noexcept { return codomain_; }

 private:
  std::vector<double> halfspace_scores(const Vector& z) const;
  std::vector<std::size_t> germ_distance_members(const Element& z) const;
  double germ_gap(std::size_t j, std::size_t k) const { return germ_gaps_[j * germs_.size() + k]; }

  CoverKind kind_ = CoverKind::Hypercube;
  std::vector<CoverElement> elements_;
  // Hypercube state.
  std::vector<std::vector<Interval>> axes_;
  std::map<std::vector<std::size_t>, std::size_t> cell_index_;
  // Thickened Voronoi state.
  std::vector<Element> germs_;
  std::vector<double> germ_sq_norms_;
  std::vector<double> germ_gaps_;  // |g_j - g_k|, row-major
  double epsilon_ = 0.0;
  ThickeningRule rule_ = ThickeningRule::GermDistance;
  LengthSpacePtr codomain_;
};

/// Intervals of length r at stride r (1 - g), anchored at lo - r g / 2 and
/// extended until hi is covered.
std::vector<Interval> axis_intervals(double lo, double hi, double r, double g);

/// Interval length giving exactly `count` intervals over [lo, hi] at gain g.
double resolution_for_interval_count(double lo, double hi, std::size_t count, double g);

/// Hypercube cover with one resolution per axis. Products containing no
/// value are dropped, unless `segments` is given, in which case products met
/// by any segment between two values are kept as well (so the cover contains
/// the whole embedded graph).
Cover build_hypercube_cover(std::span<const Element> values, std::span<const double> resolution,
                            double gain, std::span<const NodePair> segments = {});
Cover build_hypercube_cover(std::span<const Element> values, double resolution, double gain,
                            std::span<const NodePair> segments = {});

struct KMeansOptions {
  std::size_t max_iters = 300;
  std::size_t restarts = 10;
};

struct KMeansResult {
  std::vector<Vector> centers;
  std::vector<std::size_t> assignment;
  double cost = 0.0;  // sum of squared distances to the assigned center
};

/// Lloyd iterations from k-means++ seeding, best of `restarts` runs.
KMeansResult kmeans(std::span<const Vector> values, std::size_t k, Rng& rng,
                    const KMeansOptions& options = {});
double kmeans_cost(std::span<const Vector> values, std::span<const Vector> centers);

enum class EpsilonScale {
  Absolute,
  /// epsilon is a fraction of the mean half-distance from a germ to its
  /// nearest other germ.
  GermSpacing,
};

struct ThickeningOptions {
  std::optional<ThickeningRule> rule;  // default: Halfspace if Euclidean, else GermDistance
  EpsilonScale scale = EpsilonScale::Absolute;
  KMeansOptions kmeans;
};

/// epsilon-thickened Voronoi partition. Germs come from k-means for
/// Euclidean codomains and are drawn uniformly among distinct values otherwise.
Cover build_thickened_voronoi_cover(std::span<const Element> values, std::size_t k, double epsilon,
                                    LengthSpacePtr codomain, Rng& rng,
                                    const ThickeningOptions& options = {});

/// Empirical resolution: max over elements of the diameter of member values.
double resolution(const Cover& cover, std::span<const Element> values, const LengthSpace& z);

/// Indices of values covered by no element.
std::vector<std::size_t> uncovered_values(const Cover& cover, std::span<const Element> values);

std::string cover_to_json(const Cover& cover);

}  // namespace lsm
