#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lsmapper/length_space.hpp"
#include "lsmapper/types.hpp"

namespace lsm {

/// Observations (X_i, Y_i). Responses are reals for regression and class
/// indices 0..K-1 (stored as doubles) for classification.
struct SupervisedSample {
  PointCloud cloud;
  std::vector<double> responses;

  std::size_t size() const noexcept { return cloud.size(); }
  void validate() const;
};

struct KernelSpec {
  enum class Kind { Gaussian, Linear };
  Kind kind = Kind::Gaussian;
  double sigma = 1.0;

  static KernelSpec gaussian(double sigma);
  static KernelSpec linear();

  double operator()(std::span<const double> x, std::span<const double> y) const;
  std::string name() const;
};

/// Uniform-ball Nadaraya-Watson estimate of E[Y | X = x] at each query.
/// Throws a bandwidth error naming the first query whose ball is empty.
FilterAssignment nw_mean_filter(const SupervisedSample& sample, double h, const PointCloud& queries);

/// `count` equal bins over [lo, hi]: returns count + 1 breakpoints.
std::vector<double> uniform_breakpoints(double lo, double hi, std::size_t count);

/// Index of the bin of y for breakpoints b_0 < ... < b_d. Bins are
/// [b_{j}, b_{j+1}) except the last, which is closed. -1 outside [b_0, b_d].
long bin_index(std::span<const double> breakpoints, double y);

/// Uniform-ball Nadaraya-Watson estimate of P(Y in I_j | X = x). Values lie
/// in the histogram codomain with d = breakpoints.size() - 1 bins.
FilterAssignment nw_histogram_filter(const SupervisedSample& sample,
                                     std::span<const double> breakpoints, double h,
                                     const PointCloud& queries);

/// Kernel PCA fitted on a cloud. Projections of a point x are
/// (1/sqrt(lambda_j)) sum_i alpha_ji Kc(x, X_i), with Kc the centered kernel
/// and alpha_j a unit eigenvector of the centered Gram matrix.
class KpcaModel {
 public:
  static KpcaModel fit(const PointCloud& cloud, const KernelSpec& kernel, std::size_t p);

  std::size_t components() const noexcept { return lambdas_.size(); }
  const KernelSpec& kernel() const noexcept { return kernel_; }
  const PointCloud& centers() const noexcept { return centers_; }
  /// Eigenvalues of the centered Gram matrix, descending.
  const std::vector<double>& lambdas() const noexcept { return lambdas_; }
  /// alphas()[j] is the j-th unit eigenvector (length n).
  const std::vector<Vector>& alphas() const noexcept { return alphas_; }

  Vector transform(std::span<const double> x) const;
  FilterAssignment transform(const PointCloud& queries) const;

  std::string to_json() const;
  static KpcaModel from_json(const std::string& text);

 private:
  KernelSpec kernel_;
  PointCloud centers_;
  std::vector<double> lambdas_;
  std::vector<Vector> alphas_;
  // Centering terms: column means of the Gram matrix and its grand mean.
  std::vector<double> column_means_;
  double grand_mean_ = 0.0;
};

FilterAssignment kpca_filter(const PointCloud& cloud, const KernelSpec& kernel, std::size_t p,
                             const PointCloud& queries);

/// Smallest omega with |K(x1,x2) - K(x1',x2')| <= omega(sqrt(|x1-x1'|^2 + |x2-x2'|^2))
/// for the gaussian kernel: sup_r g(r) - g(r + sqrt(2) u), g(r) = exp(-r^2 / 2 sigma^2).
double gaussian_kernel_modulus(double sigma, double u);

/// Class frequencies among the k nearest sample points (distance ties broken
/// by index). Codomain R^K where K = 1 + the largest label.
FilterAssignment knn_probability_filter(const SupervisedSample& sample, std::size_t k_nn,
                                        const PointCloud& queries);

/// Scalar filter x -> x[axis].
FilterAssignment coordinate_filter(const PointCloud& cloud, std::size_t axis);
/// Scalar filter from a list of values.
FilterAssignment scalar_filter(std::span<const double> values);

}  // namespace lsm
