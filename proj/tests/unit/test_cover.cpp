#include <doctest.h>

#include <memory>

#include "lsmapper/codomains.hpp"
#include "lsmapper/cover.hpp"
#include "lsmapper/error.hpp"

using namespace lsm;

namespace {

std::vector<Element> line(std::initializer_list<double> xs) {
  std::vector<Element> out;
  for (double x : xs) out.emplace_back(Vector{x});
  return out;
}

}  // namespace

TEST_SUITE("cover") {
  TEST_CASE("single interval when r spans the data and g = 0") {
    auto iv = axis_intervals(0.0, 1.0, 1.0, 0.0);
    REQUIRE(iv.size() == 1);
    CHECK(iv[0].lo == 0.0);
    CHECK(iv[0].hi == 1.0);
    CHECK_THROWS_AS(axis_intervals(0.0, 1.0, 1.0, 1.0), Error);
  }

  TEST_CASE("interval count from the requested number") {
    for (std::size_t count : {1u, 2u, 8u, 15u}) {
      double r = resolution_for_interval_count(-1.0, 3.0, count, 0.3);
      CHECK(axis_intervals(-1.0, 3.0, r, 0.3).size() == count);
    }
  }

  TEST_CASE("k-means extremes") {
    std::vector<Vector> pts{{0.0}, {2.0}, {5.0}};
    Rng rng(1);
    auto r = kmeans(pts, 3, rng);
    CHECK(r.cost == doctest::Approx(0.0));
    CHECK_THROWS_AS(kmeans(std::vector<Vector>{{1.0}, {1.0}}, 2, rng), Error);

    std::vector<Vector> two;
    for (int i = 0; i < 10; ++i) two.push_back({0.1 * i});
    for (int i = 0; i < 10; ++i) two.push_back({100.0 + 0.1 * i});
    auto s = kmeans(two, 2, rng);
    std::vector<double> c{s.centers[0][0], s.centers[1][0]};
    std::sort(c.begin(), c.end());
    CHECK(c[0] >= 0.0);
    CHECK(c[0] <= 0.9);
    CHECK(c[1] >= 100.0);
    CHECK(c[1] <= 100.9);
    // Within-cluster variance of ten points at spacing 0.1, twice.
    CHECK(s.cost <= 2 * 0.825 + 1e-9);
  }

  TEST_CASE("thickened voronoi on the line") {
    auto z = std::make_shared<EuclideanCodomain>(1);
    auto germs = line({0.0, 10.0});
    for (auto rule : {ThickeningRule::Halfspace, ThickeningRule::GermDistance}) {
      auto thin = Cover::thickened_voronoi(germs, 0.0, rule, z);
      CHECK(thin.membership(Vector{4.0}) == std::vector<std::size_t>{0});
      CHECK(thin.membership(Vector{5.0}) == std::vector<std::size_t>{0, 1});
      // 5.5 is 5.5 from one germ and 4.5 from the other: within 2 eps.
      auto thick = Cover::thickened_voronoi(germs, 1.0, rule, z);
      CHECK(thick.membership(Vector{5.5}) == std::vector<std::size_t>{0, 1});
      CHECK(thick.membership(Vector{3.9}) == std::vector<std::size_t>{0});
    }
  }

  TEST_CASE("one germ covers everything") {
    auto z = std::make_shared<EuclideanCodomain>(2);
    std::vector<Element> vals{Vector{0.0, 0.0}, Vector{5.0, 1.0}, Vector{-3.0, 2.0}};
    Rng rng(4);
    auto cover = build_thickened_voronoi_cover(vals, 1, 0.0, z, rng);
    REQUIRE(cover.size() == 1);
    for (const auto& v : vals) CHECK(cover.membership(v) == std::vector<std::size_t>{0});
    for (std::size_t j = 0; j < cover.size(); ++j) CHECK(cover.contains(j, cover.germs()[j]));
  }

  TEST_CASE("resolution basics") {
    EuclideanCodomain z(1);
    auto vals = line({0.0, 1.0, 2.0});
    auto one = Cover::hypercube({{Interval{0.0, 2.0}}}, {{0}});
    CHECK(resolution(one, vals, z) == 2.0);
    auto apart = build_hypercube_cover(line({0.0, 10.0}), 1.0, 0.0);
    CHECK(resolution(apart, line({0.0, 10.0}), z) == 0.0);
  }

  TEST_CASE("points outside every box") {
    auto cover = Cover::hypercube({{Interval{0.0, 1.0}, Interval{2.0, 3.0}}}, {{0}, {1}});
    CHECK(cover.membership(Vector{1.5}).empty());
    CHECK(uncovered_values(cover, line({0.5, 1.5, 2.5})) == std::vector<std::size_t>{1});
  }

  TEST_CASE("resolution grows with epsilon") {
    auto z = std::make_shared<EuclideanCodomain>(2);
    Rng rng(9);
    std::uniform_real_distribution<double> u(0.0, 4.0);
    std::vector<Element> vals;
    for (int i = 0; i < 200; ++i) vals.emplace_back(Vector{u(rng), u(rng)});
    double prev = 0.0;
    for (double eps : {0.0, 0.1, 0.3, 0.6}) {
      Rng same(21);
      auto cover = build_thickened_voronoi_cover(vals, 6, eps, z, same);
      double r = resolution(cover, vals, *z);
      CHECK(r >= prev - kTolerance);
      prev = r;
    }
  }

  TEST_CASE("graph germs are drawn among distinct values") {
    auto z = std::make_shared<GraphCodomain>();
    LabeledGraph a(2), b(3);
    std::vector<Element> vals{a, a, b};
    Rng rng(3);
    auto cover = build_thickened_voronoi_cover(vals, 2, 0.0, z, rng);
    CHECK(cover.size() == 2);
    CHECK(encode(cover.germs()[0]) != encode(cover.germs()[1]));
    CHECK_THROWS_AS(build_thickened_voronoi_cover(vals, 3, 0.0, z, rng), Error);
  }
}
