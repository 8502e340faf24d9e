#include "lsmapper/filters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lsmapper/codomains.hpp"
#include "lsmapper/error.hpp"

namespace lsm {
namespace {

void check_queries(const SupervisedSample& sample, const PointCloud& queries) {
  sample.validate();
  if (queries.empty()) throw Error(ErrorKind::EmptyInput, "filter: no query points");
  if (queries.dim() != sample.cloud.dim()) {
    throw Error(ErrorKind::Parameter, "filter: queries have dimension " + std::to_string(queries.dim()) +
                                          ", sample has " + std::to_string(sample.cloud.dim()));
  }
}

void check_bandwidth(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorKind::Bandwidth, "bandwidth h must be positive");
}

// Sample indices inside the closed ball B(x, h).
void ball(const PointCloud& cloud, std::span<const double> x, double h, std::vector<std::size_t>& out) {
  out.clear();
  for (std::size_t i = 0; i < cloud.size(); ++i)
    if (euclidean_distance(cloud.point(i), x) <= h) out.push_back(i);
}

Error empty_ball(std::size_t q, double h) {
  return Error(ErrorKind::Bandwidth, "no sample point within h = " + std::to_string(h) + " of query " +
                                         std::to_string(q) + "; increase the bandwidth");
}

}  // namespace

void SupervisedSample::validate() const {
  if (cloud.empty()) throw Error(ErrorKind::EmptyInput, "sample: empty point cloud");
  if (responses.size() != cloud.size()) {
    throw Error(ErrorKind::Size, "sample: " + std::to_string(responses.size()) + " responses for " +
                                     std::to_string(cloud.size()) + " points");
  }
  for (double y : responses)
    if (!std::isfinite(y)) throw Error(ErrorKind::Format, "sample: non-finite response");
}

KernelSpec KernelSpec::gaussian(double sigma) {
  if (!(sigma > 0.0)) throw Error(ErrorKind::Parameter, "gaussian kernel: sigma must be positive");
  return {Kind::Gaussian, sigma};
}

KernelSpec KernelSpec::linear() { return {Kind::Linear, 1.0}; }

double KernelSpec::operator()(std::span<const double> x, std::span<const double> y) const {
  if (kind == Kind::Gaussian) return std::exp(-squared_distance(x, y) / (2.0 * sigma * sigma));
  double dot = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
  return dot;
}

std::string KernelSpec::name() const {
  return kind == Kind::Gaussian ? "gaussian(sigma=" + std::to_string(sigma) + ")" : std::string("linear");
}

FilterAssignment nw_mean_filter(const SupervisedSample& sample, double h, const PointCloud& queries) {
  check_bandwidth(h);
  check_queries(sample, queries);
  FilterAssignment out;
  out.codomain = std::make_shared<EuclideanCodomain>(1);
  out.values.reserve(queries.size());
  std::vector<std::size_t> near;
  for (std::size_t q = 0; q < queries.size(); ++q) {
    ball(sample.cloud, queries.point(q), h, near);
    if (near.empty()) throw empty_ball(q, h);
    double sum = 0.0;
    for (std::size_t i : near) sum += sample.responses[i];
    out.values.push_back(Vector{sum / static_cast<double>(near.size())});
  }
  return out;
}

std::vector<double> uniform_breakpoints(double lo, double hi, std::size_t count) {
  if (count == 0 || !(hi > lo)) throw Error(ErrorKind::Parameter, "breakpoints: need count > 0 and hi > lo");
  std::vector<double> b(count + 1);
  for (std::size_t j = 0; j <= count; ++j)
    b[j] = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(count);
  b.back() = hi;
  return b;
}

long bin_index(std::span<const double> breakpoints, double y) {
  if (breakpoints.size() < 2 || y < breakpoints.front() || y > breakpoints.back()) return -1;
  if (y == breakpoints.back()) return static_cast<long>(breakpoints.size()) - 2;
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), y);
  return static_cast<long>(it - breakpoints.begin()) - 1;
}

FilterAssignment nw_histogram_filter(const SupervisedSample& sample, std::span<const double> breakpoints,
                                     double h, const PointCloud& queries) {
  check_bandwidth(h);
  check_queries(sample, queries);
  if (breakpoints.size() < 2) throw Error(ErrorKind::Parameter, "histogram filter: need at least one bin");
  for (std::size_t j = 1; j < breakpoints.size(); ++j)
    if (!(breakpoints[j] > breakpoints[j - 1]))
      throw Error(ErrorKind::Parameter, "histogram filter: breakpoints must increase strictly");
  const std::size_t d = breakpoints.size() - 1;
  std::vector<long> bin(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    bin[i] = bin_index(breakpoints, sample.responses[i]);
    if (bin[i] < 0) {
      throw Error(ErrorKind::Parameter, "histogram filter: response " + std::to_string(i) +
                                            " lies outside the bins");
    }
  }
  FilterAssignment out;
  out.codomain = std::make_shared<HistogramCodomain>(d);
  out.values.reserve(queries.size());
  std::vector<std::size_t> near;
  for (std::size_t q = 0; q < queries.size(); ++q) {
    ball(sample.cloud, queries.point(q), h, near);
    if (near.empty()) throw empty_ball(q, h);
    Vector hist(d, 0.0);
    for (std::size_t i : near) hist[static_cast<std::size_t>(bin[i])] += 1.0;
    for (double& x : hist) x /= static_cast<double>(near.size());
    out.values.push_back(std::move(hist));
  }
  return out;
}

FilterAssignment knn_probability_filter(const SupervisedSample& sample, std::size_t k_nn,
                                        const PointCloud& queries) {
  check_queries(sample, queries);
  if (k_nn == 0 || k_nn > sample.size())
    throw Error(ErrorKind::Parameter, "knn filter: need 1 <= k_nn <= n");
  std::size_t classes = 0;
  for (double y : sample.responses) {
    if (y < 0.0 || y != std::floor(y)) throw Error(ErrorKind::Parameter, "knn filter: labels must be 0, 1, ...");
    classes = std::max(classes, static_cast<std::size_t>(y) + 1);
  }
  FilterAssignment out;
  out.codomain = std::make_shared<EuclideanCodomain>(classes);
  std::vector<std::pair<double, std::size_t>> order(sample.size());
  for (std::size_t q = 0; q < queries.size(); ++q) {
    for (std::size_t i = 0; i < sample.size(); ++i)
      order[i] = {squared_distance(sample.cloud.point(i), queries.point(q)), i};
    std::partial_sort(order.begin(), order.begin() + static_cast<long>(k_nn), order.end());
    Vector prob(classes, 0.0);
    for (std::size_t r = 0; r < k_nn; ++r)
      prob[static_cast<std::size_t>(sample.responses[order[r].second])] += 1.0;
    for (double& x : prob) x /= static_cast<double>(k_nn);
    out.values.push_back(std::move(prob));
  }
  return out;
}

FilterAssignment coordinate_filter(const PointCloud& cloud, std::size_t axis) {
  if (axis >= cloud.dim()) {
    throw Error(ErrorKind::Parameter, "coordinate filter: axis " + std::to_string(axis) +
                                          " out of range for dimension " + std::to_string(cloud.dim()));
  }
  FilterAssignment out;
  out.codomain = std::make_shared<EuclideanCodomain>(1);
  for (std::size_t i = 0; i < cloud.size(); ++i) out.values.push_back(Vector{cloud.point(i)[axis]});
  return out;
}

FilterAssignment scalar_filter(std::span<const double> values) {
  FilterAssignment out;
  out.codomain = std::make_shared<EuclideanCodomain>(1);
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorKind::Format, "scalar filter: non-finite value");
    out.values.push_back(Vector{v});
  }
  return out;
}

}  // namespace lsm
