#include <doctest.h>

#include <cmath>

#include "lsmapper/error.hpp"
#include "lsmapper/filters.hpp"

using namespace lsm;

namespace {

SupervisedSample line_sample(std::vector<double> xs, std::vector<double> ys) {
  std::vector<Vector> rows;
  for (double x : xs) rows.push_back({x});
  return {PointCloud(rows), std::move(ys)};
}

}  // namespace

TEST_SUITE("filters") {
  TEST_CASE("nadaraya-watson mean") {
    auto s = line_sample({0.0, 5.0, 5.2, 10.0}, {1.0, 2.0, 4.0, 7.0});
    auto f = nw_mean_filter(s, 0.5, s.cloud);
    CHECK(as_vector(f[0])[0] == 1.0);
    CHECK(as_vector(f[1])[0] == doctest::Approx(3.0));
    CHECK(as_vector(f[3])[0] == 7.0);

    auto flat = line_sample({0.0, 1.0, 2.0}, {3.5, 3.5, 3.5});
    PointCloud q(std::vector<Vector>{{0.3}, {1.6}});
    for (const auto& z : nw_mean_filter(flat, 1.0, q).values) CHECK(as_vector(z)[0] == doctest::Approx(3.5));

    PointCloud far(std::vector<Vector>{{0.0}, {50.0}});
    try {
      nw_mean_filter(s, 0.5, far);
      FAIL("expected a bandwidth error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Bandwidth);
      CHECK(std::string(e.what()).find('1') != std::string::npos);
    }
    CHECK_THROWS_AS(nw_mean_filter(s, 0.0, s.cloud), Error);
  }

  TEST_CASE("bins") {
    auto b = uniform_breakpoints(0.0, 4.0, 4);
    REQUIRE(b.size() == 5);
    CHECK(bin_index(b, 0.0) == 0);
    CHECK(bin_index(b, 1.0) == 1);
    CHECK(bin_index(b, 3.99) == 3);
    CHECK(bin_index(b, 4.0) == 3);
    CHECK(bin_index(b, 4.01) == -1);
    CHECK(bin_index(b, -0.01) == -1);
  }

  TEST_CASE("nadaraya-watson histogram") {
    auto s = line_sample({0.0, 5.0, 5.1}, {0.5, 0.5, 1.5});
    auto b = uniform_breakpoints(0.0, 2.0, 2);
    auto f = nw_histogram_filter(s, b, 0.5, s.cloud);
    CHECK(as_vector(f[0]) == Vector{1.0, 0.0});
    CHECK(as_vector(f[1])[0] == doctest::Approx(0.5));
    CHECK(as_vector(f[1])[1] == doctest::Approx(0.5));
    CHECK(f.codomain->kind() == CodomainKind::Histogram);
    for (const auto& z : f.values) f.codomain->validate(z);
  }

  TEST_CASE("kpca on two symmetric points") {
    PointCloud two(std::vector<Vector>{{-1.0, 0.0}, {1.0, 0.0}});
    for (auto k : {KernelSpec::linear(), KernelSpec::gaussian(1.0)}) {
      auto f = kpca_filter(two, k, 1, two);
      double a = as_vector(f[0])[0], b = as_vector(f[1])[0];
      CHECK(a == doctest::Approx(-b));
      CHECK(std::abs(a) > 0.1);
    }
    CHECK_THROWS_AS(KpcaModel::fit(two, KernelSpec::linear(), 2), Error);
  }

  TEST_CASE("kpca model round-trips through json") {
    PointCloud pts(std::vector<Vector>{{0.0, 0.1}, {1.0, -0.3}, {0.4, 2.0}, {-1.2, 0.5}, {0.3, 0.3}});
    auto m = KpcaModel::fit(pts, KernelSpec::gaussian(0.8), 2);
    auto back = KpcaModel::from_json(m.to_json());
    Vector x{0.2, 0.7};
    auto a = m.transform(x), b = back.transform(x);
    CHECK(a[0] == doctest::Approx(b[0]).epsilon(1e-12));
    CHECK(a[1] == doctest::Approx(b[1]).epsilon(1e-12));
    CHECK(m.lambdas()[0] >= m.lambdas()[1]);
  }

  TEST_CASE("gaussian kernel modulus") {
    CHECK(gaussian_kernel_modulus(1.0, 0.0) == 0.0);
    double prev = 0.0;
    for (double u : {0.05, 0.2, 0.5, 1.0, 3.0}) {
      double w = gaussian_kernel_modulus(1.0, u);
      CHECK(w >= prev);
      CHECK(w <= 1.0);
      prev = w;
    }
    CHECK(gaussian_kernel_modulus(1.0, 50.0) == doctest::Approx(1.0));
  }

  TEST_CASE("k nearest neighbour class frequencies") {
    auto s = line_sample({0.0, 0.1, 0.2, 5.0, 5.1}, {0, 0, 0, 1, 2});
    PointCloud q(std::vector<Vector>{{0.05}, {4.0}});
    auto f = knn_probability_filter(s, 3, q);
    CHECK(as_vector(f[0]) == Vector{1.0, 0.0, 0.0});
    auto all = knn_probability_filter(s, 5, q);
    for (const auto& z : all.values) {
      CHECK(as_vector(z)[0] == doctest::Approx(0.6));
      CHECK(as_vector(z)[1] == doctest::Approx(0.2));
    }
    CHECK_THROWS_AS(knn_probability_filter(s, 6, q), Error);
  }

  TEST_CASE("coordinate filter") {
    PointCloud pts(std::vector<Vector>{{1.0, 2.0}, {3.0, 4.0}});
    auto f = coordinate_filter(pts, 1);
    CHECK(as_vector(f[1])[0] == 4.0);
    CHECK_THROWS_AS(coordinate_filter(pts, 2), Error);
  }
}
