#include "lsmapper/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lsmapper/error.hpp"

namespace lsm {
namespace {

void require_dim(const PointCloud& cloud, std::size_t d, const char* who) {
  if (cloud.dim() < d) {
    throw Error(ErrorKind::Parameter, std::string(who) + ": points need at least " + std::to_string(d) +
                                          " coordinates");
  }
}

void require_sigma(double sigma, const char* who) {
  if (!(sigma >= 0.0)) throw Error(ErrorKind::Parameter, std::string(who) + ": sigma must be nonnegative");
}

}  // namespace

PointCloud gen_annulus(std::size_t n, double r_in, double r_out, Rng& rng) {
  if (!(r_in > 0.0 && r_in < r_out)) throw Error(ErrorKind::Parameter, "annulus: need 0 < r_in < r_out");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> coords;
  coords.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    double r = std::sqrt(unit(rng) * (r_out * r_out - r_in * r_in) + r_in * r_in);
    r = std::clamp(r, r_in, r_out);
    double theta = 2.0 * std::numbers::pi * unit(rng);
    coords.push_back(r * std::cos(theta));
    coords.push_back(r * std::sin(theta));
  }
  return PointCloud(2, std::move(coords));
}

PointCloud gen_circle(std::size_t n, double radius, double noise, Rng& rng) {
  if (!(radius > 0.0) || !(noise >= 0.0))
    throw Error(ErrorKind::Parameter, "circle: need radius > 0 and noise >= 0");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> jitter(0.0, 1.0);
  std::vector<double> coords;
  coords.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    double theta = 2.0 * std::numbers::pi * unit(rng);
    double r = radius + (noise > 0.0 ? noise * jitter(rng) : 0.0);
    coords.push_back(r * std::cos(theta));
    coords.push_back(r * std::sin(theta));
  }
  return PointCloud(2, std::move(coords));
}

std::vector<double> gen_gaussian_conditional(const PointCloud& cloud, double sigma, Rng& rng) {
  require_dim(cloud, 2, "gaussian conditional");
  require_sigma(sigma, "gaussian conditional");
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> y(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) y[i] = cloud.point(i)[1] + sigma * noise(rng);
  return y;
}

BimodalModes bimodal_modes(double x2, double min_x2, double offset) {
  double c = x2 - min_x2 + offset;
  return {c, -c};
}

std::vector<double> gen_bimodal_conditional(const PointCloud& cloud, double sigma, Rng& rng, double offset) {
  require_dim(cloud, 2, "bimodal conditional");
  require_sigma(sigma, "bimodal conditional");
  if (!(offset >= 0.0)) throw Error(ErrorKind::Parameter, "bimodal conditional: offset must be nonnegative");
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cloud.size(); ++i) lo = std::min(lo, cloud.point(i)[1]);
  std::bernoulli_distribution sign(0.5);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> y(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto modes = bimodal_modes(cloud.point(i)[1], lo, offset);
    double center = sign(rng) ? modes.plus : modes.minus;
    y[i] = center + sigma * noise(rng);
  }
  return y;
}

LabeledGraph gen_er_graph(std::size_t num_nodes, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::Parameter, "erdos-renyi: p must lie in [0, 1]");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LabeledGraph g(num_nodes);
  for (std::size_t u = 0; u < num_nodes; ++u)
    for (std::size_t v = u + 1; v < num_nodes; ++v)
      if (unit(rng) < p) g.add_edge(u, v);
  return g;
}

std::vector<LabeledGraph> gen_er_graph_data(const PointCloud& cloud, std::size_t num_nodes, Rng& rng) {
  require_dim(cloud, 1, "erdos-renyi data");
  if (cloud.empty()) throw Error(ErrorKind::EmptyInput, "erdos-renyi data: empty cloud");
  double lo = cloud.point(0)[0], hi = lo;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    lo = std::min(lo, cloud.point(i)[0]);
    hi = std::max(hi, cloud.point(i)[0]);
  }
  if (!(hi > lo)) throw Error(ErrorKind::Normalization, "erdos-renyi data: first coordinate is constant");
  std::vector<LabeledGraph> out;
  out.reserve(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    double p = std::clamp((cloud.point(i)[0] - lo) / (hi - lo), 0.0, 1.0);
    out.push_back(gen_er_graph(num_nodes, p, rng));
  }
  return out;
}

SupervisedSample gen_blobs(std::size_t n, const std::vector<Vector>& centers, double spread, Rng& rng) {
  if (centers.empty()) throw Error(ErrorKind::Parameter, "blobs: need at least one center");
  if (!(spread >= 0.0)) throw Error(ErrorKind::Parameter, "blobs: spread must be nonnegative");
  const std::size_t dim = centers[0].size();
  for (const auto& c : centers)
    if (c.size() != dim || dim == 0) throw Error(ErrorKind::Parameter, "blobs: centers must share a dimension");
  std::normal_distribution<double> noise(0.0, 1.0);
  SupervisedSample s;
  std::vector<double> coords;
  coords.reserve(n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t label = i % centers.size();
    for (std::size_t q = 0; q < dim; ++q) coords.push_back(centers[label][q] + spread * noise(rng));
    s.responses.push_back(static_cast<double>(label));
  }
  s.cloud = PointCloud(dim, std::move(coords));
  return s;
}

}  // namespace lsm
