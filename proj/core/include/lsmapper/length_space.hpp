#pragma once

#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lsmapper/labeled_graph.hpp"
#include "lsmapper/types.hpp"

namespace lsm {

/// A codomain element: a point of R^p (Euclidean and histogram codomains) or a
/// labeled graph (graph codomain).
using Element = std::variant<Vector, LabeledGraph>;

/// Stable byte encoding of an element. Bitwise for vectors, canonical
/// adjacency dump for graphs. Two elements are "the same" iff encodings match.
std::string encode(const Element& z);

const Vector& as_vector(const Element& z);
const LabeledGraph& as_graph(const Element& z);

enum class CodomainKind { Euclidean, Histogram, Graph };

/// Codomain (Z, d_Z) of a filter: a distance plus a way to walk along a
/// shortest (or canonical) path between two elements.
class LengthSpace {
 public:
  virtual ~LengthSpace() = default;

  virtual CodomainKind kind() const noexcept = 0;
  virtual std::string name() const = 0;

  /// True when elements are vectors in R^p with straight-line geodesics.
  virtual bool is_euclidean() const noexcept { return false; }
  /// Coordinate dimension for vector codomains, 0 otherwise.
  virtual std::size_t dimension() const noexcept { return 0; }

  virtual double distance(const Element& a, const Element& b) const = 0;

  /// Any value <= distance(a, b). Expensive codomains override this so that
  /// nearest-germ queries can skip most exact evaluations.
  virtual double distance_lower_bound(const Element&, const Element&) const { return 0.0; }

  /// gamma(t) with gamma(0) = a and gamma(1) = b.
  virtual Element geodesic_sample(const Element& a, const Element& b, double t) const = 0;

  /// Samples the same path at several parameters; codomains with an expensive
  /// path computation override this to do the work once.
  virtual std::vector<Element> geodesic_samples(const Element& a, const Element& b,
                                                std::span<const double> ts) const;

  /// Throws lsm::Error when z is not a valid element of this space.
  virtual void validate(const Element& z) const = 0;
};

using LengthSpacePtr = std::shared_ptr<const LengthSpace>;

/// Filter values indexed by dense node id, together with their codomain.
struct FilterAssignment {
  std::vector<Element> values;
  LengthSpacePtr codomain;

  std::size_t size() const noexcept { return values.size(); }
  const Element& operator[](std::size_t i) const { return values[i]; }
};

/// Largest pairwise distance in S; 0 for a singleton. Throws on empty input.
double finite_set_diameter(std::span<const Element> s, const LengthSpace& z);

}  // namespace lsm
