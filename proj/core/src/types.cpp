#include "lsmapper/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lsmapper/error.hpp"

namespace lsm {

PointCloud::PointCloud(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0 && !coords_.empty()) throw Error(ErrorKind::Parameter, "point cloud: zero dimension");
  if (dim_ != 0 && coords_.size() % dim_ != 0)
    throw Error(ErrorKind::Parameter, "point cloud: coordinate count is not a multiple of D");
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    if (!std::isfinite(coords_[k])) {
      throw Error(ErrorKind::Parameter, "point cloud: non-finite coordinate at point " +
                                            std::to_string(k / dim_));
    }
  }
}

PointCloud::PointCloud(const std::vector<Vector>& rows) {
  if (rows.empty()) return;
  std::size_t dim = rows.front().size();
  std::vector<double> coords;
  coords.reserve(rows.size() * dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) {
      throw Error(ErrorKind::Parameter, "point cloud: row " + std::to_string(i) + " has " +
                                            std::to_string(rows[i].size()) + " coordinates, expected " +
                                            std::to_string(dim));
    }
    coords.insert(coords.end(), rows[i].begin(), rows[i].end());
  }
  *this = PointCloud(dim, std::move(coords));
}

PointCloud PointCloud::subset(std::span<const std::size_t> indices) const {
  std::vector<double> coords;
  coords.reserve(indices.size() * dim_);
  for (std::size_t i : indices) {
    auto p = point(i);
    coords.insert(coords.end(), p.begin(), p.end());
  }
  return PointCloud(dim_, std::move(coords));
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

FinitePseudometricSpace::FinitePseudometricSpace(std::vector<std::string> labels,
                                                 std::vector<double> dist)
    : labels_(std::move(labels)), dist_(std::move(dist)) {
  if (dist_.size() != labels_.size() * labels_.size())
    throw Error(ErrorKind::Parameter, "pseudometric: matrix is not square in the number of labels");
}

FinitePseudometricSpace FinitePseudometricSpace::from_matrix(std::size_t n, std::vector<double> dist) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return {std::move(labels), std::move(dist)};
}

double FinitePseudometricSpace::diameter() const {
  double d = 0.0;
  for (double x : dist_) d = std::max(d, x);
  return d;
}

std::string PseudometricViolation::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::NotSquare: out << "matrix is not square"; break;
    case Kind::Diagonal: out << "nonzero diagonal at " << i; break;
    case Kind::Symmetry: out << "asymmetric pair (" << i << ", " << j << ")"; break;
    case Kind::Negative: out << "negative entry at (" << i << ", " << j << ")"; break;
    case Kind::Triangle:
      out << "triangle inequality fails for (" << i << ", " << j << ", " << k
          << "): d(i,k) > d(i,j) + d(j,k)";
      break;
  }
  return out.str();
}

std::optional<PseudometricViolation> validate_pseudometric(std::size_t n,
                                                           std::span<const double> d,
                                                           double tol) {
  using K = PseudometricViolation::Kind;
  if (d.size() != n * n) return PseudometricViolation{K::NotSquare};
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(d[i * n + i]) > tol) return PseudometricViolation{K::Diagonal, i, i};
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(d[i * n + j] - d[j * n + i]) > tol) return PseudometricViolation{K::Symmetry, i, j};
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (d[i * n + j] < -tol || std::isnan(d[i * n + j])) return PseudometricViolation{K::Negative, i, j};
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (d[i * n + k] > d[i * n + j] + d[j * n + k] + tol)
          return PseudometricViolation{K::Triangle, i, j, k};
      }
    }
  }
  return std::nullopt;
}

std::optional<PseudometricViolation> validate_pseudometric(const FinitePseudometricSpace& m,
                                                           double tol) {
  return validate_pseudometric(m.size(), m.matrix(), tol);
}

}  // namespace lsm
