#include <algorithm>
#include <cmath>
#include <limits>

#include "lsmapper/error.hpp"
#include "lsmapper/pseudometric.hpp"

namespace lsm {
namespace {

double diameter(const FinitePseudometricSpace& s) { return s.size() == 0 ? 0.0 : s.diameter(); }

}  // namespace

double gh_lower_bound(const FinitePseudometricSpace& a, const FinitePseudometricSpace& b) {
  return 0.5 * std::abs(diameter(a) - diameter(b));
}

double correspondence_distortion(const FinitePseudometricSpace& a, const FinitePseudometricSpace& b,
                                 std::span<const NodePair> pairs) {
  for (auto [i, j] : pairs)
    if (i >= a.size() || j >= b.size()) throw Error(ErrorKind::Parameter, "correspondence pair out of range");
  double worst = 0.0;
  for (std::size_t p = 0; p < pairs.size(); ++p)
    for (std::size_t q = p + 1; q < pairs.size(); ++q)
      worst = std::max(worst, std::abs(a(pairs[p].first, pairs[q].first) - b(pairs[p].second, pairs[q].second)));
  return worst;
}

// Every correspondence contains the union of the graphs of some maps
// phi: A -> B and psi: B -> A, and distortion only grows with the relation,
// so it is enough to search over such unions. psi is only needed on points
// of B that phi misses.
double gromov_hausdorff_exact(const FinitePseudometricSpace& a, const FinitePseudometricSpace& b) {
  if (a.size() == 0 || b.size() == 0) throw Error(ErrorKind::EmptyInput, "gromov-hausdorff: empty space");
  if (a.size() > kGromovHausdorffOracleLimit || b.size() > kGromovHausdorffOracleLimit) {
    throw Error(ErrorKind::Size, "gromov_hausdorff_exact handles at most " +
                                     std::to_string(kGromovHausdorffOracleLimit) +
                                     " points per space; use gh_lower_bound for larger spaces");
  }
  const std::size_t na = a.size(), nb = b.size();
  double best = std::max(diameter(a), diameter(b));  // any correspondence does this well
  std::vector<NodePair> rel;
  std::vector<std::size_t> covered(nb, 0);

  auto grow = [&](std::size_t i, std::size_t j, double current) {
    double worst = current;
    for (auto [p, q] : rel) worst = std::max(worst, std::abs(a(p, i) - b(q, j)));
    return worst;
  };
  auto fill_b = [&](auto&& self, std::size_t j, double current) -> void {
    while (j < nb && covered[j]) ++j;
    if (j == nb) {
      best = std::min(best, current);
      return;
    }
    for (std::size_t i = 0; i < na; ++i) {
      double next = grow(i, j, current);
      if (next >= best) continue;
      rel.emplace_back(i, j);
      self(self, j + 1, next);
      rel.pop_back();
    }
  };
  auto fill_a = [&](auto&& self, std::size_t i, double current) -> void {
    if (i == na) {
      fill_b(fill_b, 0, current);
      return;
    }
    for (std::size_t j = 0; j < nb; ++j) {
      double next = grow(i, j, current);
      if (next >= best) continue;
      rel.emplace_back(i, j);
      ++covered[j];
      self(self, i + 1, next);
      --covered[j];
      rel.pop_back();
    }
  };
  // Seed `best` slightly above its trivial value so a correspondence with
  // exactly that distortion is still explored.
  best = std::nextafter(best, std::numeric_limits<double>::infinity());
  fill_a(fill_a, 0, 0.0);
  return 0.5 * best;
}

}  // namespace lsm
