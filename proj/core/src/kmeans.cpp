#include <algorithm>
#include <limits>
#include <unordered_set>

#include "lsmapper/cover.hpp"
#include "lsmapper/error.hpp"

namespace lsm {
namespace {

std::size_t count_distinct(std::span<const Vector> values) {
  std::unordered_set<std::string> seen;
  for (const auto& v : values) seen.insert(encode(Element(v)));
  return seen.size();
}

std::size_t nearest(const Vector& x, std::span<const Vector> centers, double& d2) {
  std::size_t best = 0;
  d2 = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centers.size(); ++c) {
    double d = squared_distance(x, centers[c]);
    if (d < d2) {
      d2 = d;
      best = c;
    }
  }
  return best;
}

std::vector<Vector> seed_plus_plus(std::span<const Vector> values, std::size_t k, Rng& rng) {
  std::vector<Vector> centers;
  std::uniform_int_distribution<std::size_t> first(0, values.size() - 1);
  centers.push_back(values[first(rng)]);
  std::vector<double> d2(values.size(), std::numeric_limits<double>::infinity());
  while (centers.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      d2[i] = std::min(d2[i], squared_distance(values[i], centers.back()));
      total += d2[i];
    }
    std::size_t pick = 0;
    if (total > 0.0) {
      std::uniform_real_distribution<double> u(0.0, total);
      double r = u(rng), acc = 0.0;
      pick = values.size() - 1;
      for (std::size_t i = 0; i < values.size(); ++i) {
        acc += d2[i];
        if (acc > r && d2[i] > 0.0) {
          pick = i;
          break;
        }
      }
      // Guard against rounding landing on an already chosen point.
      if (d2[pick] == 0.0)
        pick = static_cast<std::size_t>(std::max_element(d2.begin(), d2.end()) - d2.begin());
    }
    centers.push_back(values[pick]);
  }
  return centers;
}

KMeansResult lloyd(std::span<const Vector> values, std::vector<Vector> centers, std::size_t max_iters) {
  const std::size_t n = values.size(), k = centers.size(), p = values[0].size();
  std::vector<std::size_t> assign(n, k);
  std::vector<double> d2(n);
  for (std::size_t it = 0; it < std::max<std::size_t>(max_iters, 1); ++it) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t c = nearest(values[i], centers, d2[i]);
      if (c != assign[i]) {
        assign[i] = c;
        changed = true;
      }
    }
    // Empty cells take the point farthest from its current center.
    std::vector<std::size_t> count(k, 0);
    for (auto c : assign) ++count[c];
    for (std::size_t c = 0; c < k; ++c) {
      if (count[c] > 0) continue;
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i)
        if (count[assign[i]] > 1 && (far == n || d2[i] > d2[far])) far = i;
      if (far == n) continue;
      --count[assign[far]];
      assign[far] = c;
      d2[far] = 0.0;
      ++count[c];
      changed = true;
    }
    std::vector<Vector> sums(k, Vector(p, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t q = 0; q < p; ++q) sums[assign[i]][q] += values[i][q];
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t q = 0; q < p; ++q) centers[c][q] = sums[c][q] / static_cast<double>(count[c]);
    if (!changed) break;
  }
  KMeansResult r;
  r.centers = std::move(centers);
  r.assignment = std::move(assign);
  r.cost = 0.0;
  for (std::size_t i = 0; i < n; ++i) r.cost += squared_distance(values[i], r.centers[r.assignment[i]]);
  return r;
}

}  // namespace

KMeansResult kmeans(std::span<const Vector> values, std::size_t k, Rng& rng, const KMeansOptions& options) {
  if (values.empty()) throw Error(ErrorKind::EmptyInput, "kmeans: no values");
  if (k == 0) throw Error(ErrorKind::Parameter, "kmeans: k must be positive");
  std::size_t distinct = count_distinct(values);
  if (k > distinct) {
    throw Error(ErrorKind::Parameter, "kmeans: k = " + std::to_string(k) + " exceeds the " +
                                          std::to_string(distinct) + " distinct values");
  }
  KMeansResult best;
  best.cost = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < std::max<std::size_t>(options.restarts, 1); ++r) {
    auto result = lloyd(values, seed_plus_plus(values, k, rng), options.max_iters);
    if (result.cost < best.cost) best = std::move(result);
  }
  return best;
}

double kmeans_cost(std::span<const Vector> values, std::span<const Vector> centers) {
  double cost = 0.0, d2 = 0.0;
  for (const auto& v : values) {
    nearest(v, centers, d2);
    cost += d2;
  }
  return cost;
}

}  // namespace lsm
