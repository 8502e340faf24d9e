#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lsmapper/error.hpp"
#include "lsmapper/generators.hpp"

using namespace lsm;

TEST_SUITE("generators") {
  TEST_CASE("annulus and circle shapes") {
    Rng rng(1);
    CHECK(gen_annulus(1, 1.0, 2.0, rng).size() == 1);
    auto a = gen_annulus(2000, 1.0, 2.0, rng);
    for (std::size_t i = 0; i < a.size(); ++i) {
      double r = std::hypot(a.point(i)[0], a.point(i)[1]);
      CHECK(r >= 1.0 - 1e-12);
      CHECK(r <= 2.0 + 1e-12);
    }
    auto c = gen_circle(100, 1.0, 0.0, rng);
    for (std::size_t i = 0; i < c.size(); ++i)
      CHECK(std::hypot(c.point(i)[0], c.point(i)[1]) == doctest::Approx(1.0));
  }

  TEST_CASE("gaussian conditional moments") {
    Rng rng(2);
    auto cloud = gen_annulus(5000, 1.0, 2.0, rng);
    auto exact = gen_gaussian_conditional(cloud, 0.0, rng);
    for (std::size_t i = 0; i < cloud.size(); ++i) CHECK(exact[i] == cloud.point(i)[1]);

    const double sigma = 0.5;
    auto y = gen_gaussian_conditional(cloud, sigma, rng);
    double mean = 0.0, var = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) mean += y[i] - cloud.point(i)[1];
    mean /= static_cast<double>(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      double r = y[i] - cloud.point(i)[1] - mean;
      var += r * r;
    }
    var /= static_cast<double>(y.size() - 1);
    CHECK(std::abs(mean) <= 4.0 * sigma / std::sqrt(5000.0));
    CHECK(var == doctest::Approx(sigma * sigma).epsilon(0.2));
  }

  TEST_CASE("bimodal conditional") {
    Rng rng(3);
    auto cloud = gen_annulus(200, 1.0, 2.0, rng);
    double min_x2 = cloud.point(0)[1];
    for (std::size_t i = 0; i < cloud.size(); ++i) min_x2 = std::min(min_x2, cloud.point(i)[1]);

    auto modes = gen_bimodal_conditional(cloud, 0.0, rng);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      auto m = bimodal_modes(cloud.point(i)[1], min_x2, kDefaultBimodalOffset);
      CHECK((modes[i] == m.plus || modes[i] == m.minus));
    }

    // Conditional mean is flat: average many redraws at each of a few points.
    const double sigma = 0.2;
    const int redraws = 10000;
    std::vector<double> avg(5, 0.0);
    for (int r = 0; r < redraws; ++r) {
      auto y = gen_bimodal_conditional(cloud, sigma, rng);
      for (std::size_t i = 0; i < 5; ++i) avg[i] += y[i] / redraws;
    }
    for (std::size_t i = 0; i < 5; ++i) {
      double spread = bimodal_modes(cloud.point(i)[1], min_x2, kDefaultBimodalOffset).plus;
      double sd = std::sqrt(spread * spread + sigma * sigma);
      CHECK(std::abs(avg[i]) <= 3.0 * sd / 100.0);
    }

    // At one point the response histogram dips between its two modes.
    auto m = bimodal_modes(cloud.point(0)[1], min_x2, kDefaultBimodalOffset);
    int near_plus = 0, near_minus = 0, middle = 0;
    for (int r = 0; r < 4000; ++r) {
      double y = gen_bimodal_conditional(cloud, sigma, rng)[0];
      if (std::abs(y - m.plus) < 0.1) ++near_plus;
      else if (std::abs(y - m.minus) < 0.1) ++near_minus;
      else if (std::abs(y - 0.5 * (m.plus + m.minus)) < 0.1) ++middle;
    }
    CHECK(m.plus - m.minus >= 2.0 * kDefaultBimodalOffset - 1e-12);
    CHECK(middle < near_plus / 4);
    CHECK(middle < near_minus / 4);
  }

  TEST_CASE("erdos-renyi graphs") {
    Rng rng(4);
    CHECK(gen_er_graph(20, 0.0, rng).num_edges() == 0);
    CHECK(gen_er_graph(20, 1.0, rng).num_edges() == 190);
    double total = 0.0;
    for (int t = 0; t < 100; ++t) total += static_cast<double>(gen_er_graph(20, 0.5, rng).num_edges());
    CHECK(std::abs(total / 100.0 - 95.0) <= 10.0);

    PointCloud flat(std::vector<Vector>{{1.0, 0.0}, {1.0, 1.0}});
    try {
      gen_er_graph_data(flat, 5, rng);
      FAIL("expected a normalization error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Normalization);
    }
    PointCloud ends(std::vector<Vector>{{0.0}, {1.0}});
    auto gs = gen_er_graph_data(ends, 6, rng);
    CHECK(gs[0].num_edges() == 0);
    CHECK(gs[1].num_edges() == 15);
  }

  TEST_CASE("blobs label by index") {
    Rng rng(5);
    auto s = gen_blobs(9, {{0.0, 0.0}, {5.0, 5.0}, {-5.0, 5.0}}, 0.1, rng);
    CHECK(s.size() == 9);
    for (std::size_t i = 0; i < 9; ++i) CHECK(s.responses[i] == static_cast<double>(i % 3));
  }
}
