#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <json.hpp>

#include "lsmapper/codomains.hpp"
#include "lsmapper/error.hpp"
#include "lsmapper/filters.hpp"

namespace lsm {

KpcaModel KpcaModel::fit(const PointCloud& cloud, const KernelSpec& kernel, std::size_t p) {
  const std::size_t n = cloud.size();
  if (n == 0) throw Error(ErrorKind::EmptyInput, "kpca: empty point cloud");
  if (p == 0 || p > n) throw Error(ErrorKind::Parameter, "kpca: need 1 <= p <= n");
  const auto N = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd k(N, N);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double v = kernel(cloud.point(i), cloud.point(j));
      k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      k(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> raw(k, Eigen::EigenvaluesOnly);
    double top = std::max(std::abs(raw.eigenvalues().maxCoeff()), 1e-300);
    if (raw.eigenvalues().minCoeff() < -1e-8 * top)
      throw Error(ErrorKind::Kernel, "kpca: kernel matrix is not positive semidefinite");
  }
  KpcaModel m;
  m.kernel_ = kernel;
  m.centers_ = cloud;
  Eigen::VectorXd col = k.colwise().mean().transpose();
  double grand = col.mean();
  Eigen::MatrixXd kc = k;
  kc.rowwise() -= col.transpose();
  kc.colwise() -= col;
  kc.array() += grand;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(kc);
  if (eig.info() != Eigen::Success) throw Error(ErrorKind::Kernel, "kpca: eigendecomposition failed");
  const Eigen::VectorXd& lam = eig.eigenvalues();  // ascending
  double top = std::max(lam(N - 1), 0.0);
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < N; ++i)
    if (lam(i) > 1e-10 * top && lam(i) > 0.0) ++rank;
  if (p > rank) {
    throw Error(ErrorKind::Rank, "kpca: p = " + std::to_string(p) + " exceeds the rank " + std::to_string(rank) +
                                     " of the centered kernel matrix");
  }
  for (std::size_t j = 0; j < p; ++j) {
    Eigen::Index c = N - 1 - static_cast<Eigen::Index>(j);
    Eigen::VectorXd a = eig.eigenvectors().col(c).normalized();
    // Fix the sign: loadings sum to a nonnegative value, ties decided by the
    // first nonzero coordinate.
    double sum = a.sum();
    bool flip = sum < 0.0;
    if (std::abs(sum) <= 1e-10 * std::sqrt(static_cast<double>(n))) {
      flip = false;
      for (Eigen::Index i = 0; i < N; ++i)
        if (std::abs(a(i)) > 1e-12) {
          flip = a(i) < 0.0;
          break;
        }
    }
    if (flip) a = -a;
    m.lambdas_.push_back(lam(c));
    m.alphas_.emplace_back(a.data(), a.data() + N);
  }
  m.column_means_.assign(col.data(), col.data() + N);
  m.grand_mean_ = grand;
  return m;
}

Vector KpcaModel::transform(std::span<const double> x) const {
  const std::size_t n = centers_.size();
  if (x.size() != centers_.dim())
    throw Error(ErrorKind::Parameter, "kpca: query dimension does not match the fitted cloud");
  std::vector<double> kx(n);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    kx[i] = kernel_(x, centers_.point(i));
    mean += kx[i];
  }
  mean /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) kx[i] += grand_mean_ - mean - column_means_[i];
  Vector out(lambdas_.size(), 0.0);
  for (std::size_t j = 0; j < lambdas_.size(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += alphas_[j][i] * kx[i];
    out[j] = s / std::sqrt(lambdas_[j]);
  }
  return out;
}

FilterAssignment KpcaModel::transform(const PointCloud& queries) const {
  FilterAssignment out;
  out.codomain = std::make_shared<EuclideanCodomain>(lambdas_.size());
  out.values.reserve(queries.size());
  for (std::size_t q = 0; q < queries.size(); ++q) out.values.push_back(transform(queries.point(q)));
  return out;
}

std::string KpcaModel::to_json() const {
  nlohmann::ordered_json j;
  j["kernel"] = {{"kind", kernel_.kind == KernelSpec::Kind::Gaussian ? "gaussian" : "linear"},
                 {"sigma", kernel_.sigma}};
  auto& centers = j["centers"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < centers_.size(); ++i) centers.push_back(centers_.row(i));
  j["alphas"] = alphas_;
  j["lambdas"] = lambdas_;
  j["column_means"] = column_means_;
  j["grand_mean"] = grand_mean_;
  return j.dump(2);
}

KpcaModel KpcaModel::from_json(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    KpcaModel m;
    const auto& k = j.at("kernel");
    std::string kind = k.at("kind").get<std::string>();
    if (kind == "gaussian") m.kernel_ = KernelSpec::gaussian(k.at("sigma").get<double>());
    else if (kind == "linear") m.kernel_ = KernelSpec::linear();
    else throw Error(ErrorKind::Format, "kpca json: unknown kernel '" + kind + "'");
    m.centers_ = PointCloud(j.at("centers").get<std::vector<Vector>>());
    m.alphas_ = j.at("alphas").get<std::vector<Vector>>();
    m.lambdas_ = j.at("lambdas").get<std::vector<double>>();
    m.column_means_ = j.at("column_means").get<std::vector<double>>();
    m.grand_mean_ = j.at("grand_mean").get<double>();
    if (m.alphas_.size() != m.lambdas_.size() || m.column_means_.size() != m.centers_.size())
      throw Error(ErrorKind::Format, "kpca json: inconsistent sizes");
    for (const auto& a : m.alphas_)
      if (a.size() != m.centers_.size()) throw Error(ErrorKind::Format, "kpca json: inconsistent sizes");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Format, std::string("kpca json: ") + e.what());
  }
}

FilterAssignment kpca_filter(const PointCloud& cloud, const KernelSpec& kernel, std::size_t p,
                             const PointCloud& queries) {
  return KpcaModel::fit(cloud, kernel, p).transform(queries);
}

double gaussian_kernel_modulus(double sigma, double u) {
  if (!(sigma > 0.0)) throw Error(ErrorKind::Parameter, "kernel modulus: sigma must be positive");
  if (u <= 0.0) return 0.0;
  const double c = std::sqrt(2.0) * u;
  auto phi = [&](double r) {
    return std::exp(-r * r / (2.0 * sigma * sigma)) - std::exp(-(r + c) * (r + c) / (2.0 * sigma * sigma));
  };
  // phi is smooth with a single interior maximum (or its max at r = 0):
  // locate it on a grid, then refine by golden section.
  const double hi = 6.0 * sigma;
  const int grid = 600;
  int best = 0;
  for (int i = 1; i <= grid; ++i)
    if (phi(hi * i / grid) > phi(hi * best / grid)) best = i;
  double a = hi * std::max(best - 1, 0) / grid, b = hi * std::min(best + 1, grid) / grid;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 100; ++it) {
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    if (phi(x1) < phi(x2)) a = x1;
    else b = x2;
  }
  return std::max({phi(0.0), phi(0.5 * (a + b)), phi(hi * best / grid)});
}

}  // namespace lsm
