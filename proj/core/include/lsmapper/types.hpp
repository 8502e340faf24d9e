#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace lsm {

/// Absolute tolerance shared by every floating-point comparison in the library.
inline constexpr double kTolerance = 1e-9;

using Vector = std::vector<double>;
using Rng = std::mt19937_64;

/// Finite sample in R^D, stored row-major. Row order fixes point identity.
class PointCloud {
 public:
  PointCloud() = default;
  PointCloud(std::size_t dim, std::vector<double> coords);
  explicit PointCloud(const std::vector<Vector>& rows);

  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  Vector row(std::size_t i) const {
    auto p = point(i);
    return {p.begin(), p.end()};
  }
  const std::vector<double>& coords() const noexcept { return coords_; }

  PointCloud subset(std::span<const std::size_t> indices) const;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

double euclidean_distance(std::span<const double> a, std::span<const double> b);
double squared_distance(std::span<const double> a, std::span<const double> b);

/// Labels plus a symmetric distance matrix with zero diagonal.
class FinitePseudometricSpace {
 public:
  FinitePseudometricSpace() = default;
  FinitePseudometricSpace(std::vector<std::string> labels, std::vector<double> dist);

  /// Builds a space with labels "0", "1", ... from a dense row-major matrix.
  static FinitePseudometricSpace from_matrix(std::size_t n, std::vector<double> dist);

  std::size_t size() const noexcept { return labels_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return dist_[i * size() + j]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<double>& matrix() const noexcept { return dist_; }

  double diameter() const;

 private:
  std::vector<std::string> labels_;
  std::vector<double> dist_;
};

struct PseudometricViolation {
  enum class Kind { NotSquare, Diagonal, Symmetry, Negative, Triangle };
  Kind kind;
  std::size_t i = 0, j = 0, k = 0;
  std::string describe() const;
};

/// First diagonal / symmetry / sign / triangle violation, or nullopt.
std::optional<PseudometricViolation> validate_pseudometric(std::size_t n,
                                                           std::span<const double> dist,
                                                           double tol = kTolerance);
std::optional<PseudometricViolation> validate_pseudometric(const FinitePseudometricSpace& m,
                                                           double tol = kTolerance);

}  // namespace lsm
