#include <doctest.h>

#include <json.hpp>
#include <memory>
#include <set>

#include "fixture_checks.hpp"
#include "lsmapper/codomains.hpp"
#include "lsmapper/error.hpp"
#include "lsmapper/filters.hpp"
#include "lsmapper/mapper.hpp"

using namespace lsm;

namespace {

ValuedGraph scalar_graph(std::vector<double> values, std::vector<NodePair> edges) {
  ValuedGraph g;
  g.num_nodes = values.size();
  g.edges = std::move(edges);
  g.values = scalar_filter(values);
  return g;
}

MapperComplex complex_from_edges(std::size_t n, const std::vector<std::vector<std::size_t>>& simplices) {
  MapperComplex m;
  for (std::size_t i = 0; i < n; ++i) m.nodes.push_back({i, i, {i}, std::nullopt});
  for (const auto& s : simplices) m.simplices.push_back({s, {}});
  return m;
}

}  // namespace

TEST_SUITE("mapper") {
  TEST_CASE("a single point spans the nerve of its memberships") {
    auto g = scalar_graph({1.0}, {});
    auto cover = Cover::hypercube({{Interval{0.0, 2.0}, Interval{0.5, 1.5}, Interval{0.9, 3.0}}}, {{0}, {1}, {2}});
    auto m = build_mapper(g, cover);
    CHECK(m.nodes.size() == 3);
    CHECK(m.simplices.size() == 4);  // three edges and the triangle
    for (const auto& s : m.simplices) CHECK(s.witnesses == std::vector<std::size_t>{0});
  }

  TEST_CASE("a disconnected preimage splits into two nodes") {
    auto g = scalar_graph({0.2, 0.4}, {});
    auto cover = Cover::hypercube({{Interval{0.0, 1.0}}}, {{0}});
    auto m = build_mapper(g, cover);
    CHECK(m.nodes.size() == 2);
    CHECK(m.simplices.empty());
    CHECK(betti_numbers(m) == Betti{2, 0});
  }

  TEST_CASE("uncovered nodes are a coverage error") {
    auto g = scalar_graph({0.2, 5.0}, {{0, 1}});
    auto cover = Cover::hypercube({{Interval{0.0, 1.0}}}, {{0}});
    try {
      build_mapper(g, cover);
      FAIL("expected a coverage error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Coverage);
      CHECK(std::string(e.what()).find('1') != std::string::npos);
    }
  }

  TEST_CASE("representatives follow the smallest unused member") {
    auto g = scalar_graph({0.1, 0.9, 0.5, 0.6}, {{0, 2}, {2, 3}, {3, 1}});
    auto cover = Cover::hypercube({{Interval{0.0, 0.55}, Interval{0.45, 1.0}}}, {{0}, {1}});
    auto m = build_mapper(g, cover);
    REQUIRE(m.nodes.size() == 2);
    CHECK(m.nodes[0].members == std::vector<std::size_t>{0, 2});
    CHECK(m.nodes[1].members == std::vector<std::size_t>{1, 2, 3});
    assign_representatives(m, g.values, cover);
    CHECK(as_vector(*m.nodes[0].representative)[0] == 0.1);
    CHECK(as_vector(*m.nodes[1].representative)[0] == 0.9);

    // Both nodes have member 2 first; the second one moves on to member 3.
    auto shared = scalar_graph({0.0, 0.0, 0.5, 0.52}, {{2, 3}});
    auto two = Cover::hypercube({{Interval{0.4, 0.55}, Interval{0.45, 0.6}}}, {{0}, {1}});
    ValuedGraph only;
    only.num_nodes = 4;
    only.edges = {{2, 3}};
    only.values = shared.values;
    MapperComplex mc;
    mc.nodes.push_back({0, 0, {2}, std::nullopt});
    mc.nodes.push_back({1, 1, {2, 3}, std::nullopt});
    assign_representatives(mc, only.values, two);
    CHECK(as_vector(*mc.nodes[0].representative)[0] == 0.5);
    CHECK(as_vector(*mc.nodes[1].representative)[0] == 0.52);
  }

  TEST_CASE("betti numbers of small complexes") {
    CHECK(betti_numbers(complex_from_edges(1, {})) == Betti{1, 0});
    auto hollow = complex_from_edges(3, {{0, 1}, {0, 2}, {1, 2}});
    CHECK(betti_numbers(hollow) == Betti{1, 1});
    CHECK(homology_betti_numbers(hollow) == Betti{1, 1});
    auto filled = complex_from_edges(3, {{0, 1}, {0, 1, 2}, {0, 2}, {1, 2}});
    CHECK(betti_numbers(filled) == Betti{1, 1});
    CHECK(homology_betti_numbers(filled) == Betti{1, 0});
  }

  TEST_CASE("export formats") {
    MapperComplex empty;
    auto doc = nlohmann::json::parse(export_mapper(empty, MapperFormat::Json));
    CHECK(doc["nodes"].empty());
    CHECK(mapper_from_json(export_mapper(empty, MapperFormat::Json)) == empty);

    auto one = complex_from_edges(1, {});
    auto dot = export_mapper(one, MapperFormat::Dot);
    CHECK(dot.find("graph") != std::string::npos);
    CHECK(dot.find("--") == std::string::npos);
    CHECK(dot.find("0") != std::string::npos);
    CHECK(parse_mapper_format("dot") == MapperFormat::Dot);
    CHECK_THROWS_AS(parse_mapper_format("svg"), Error);
  }

  TEST_CASE("circle under height is a single loop") {
    auto c = fixtures::circle_mapper();
    CHECK(c.mapper.nodes.size() >= 12);
    CHECK(c.mapper.nodes.size() <= 16);
    CHECK(betti_numbers(c.mapper) == Betti{1, 1});

    assign_representatives(c.mapper, c.graph.values(), c.cover);
    std::set<double> seen;
    for (const auto& node : c.mapper.nodes) {
      REQUIRE(node.representative);
      double z = as_vector(*node.representative)[0];
      CHECK(seen.insert(z).second);
      CHECK(c.cover.contains(node.cover_element, *node.representative));
    }

    auto text = export_mapper(c.mapper, MapperFormat::Json);
    CHECK(mapper_from_json(text) == c.mapper);
  }

  TEST_CASE("canonical form ignores how finely an edge is cut") {
    PointCloud two(std::vector<Vector>{{0.0}, {1.0}});
    auto g = build_neighborhood_graph(two, 1.0);
    auto f = scalar_filter(std::vector<double>{0.0, 10.0});
    auto cover = Cover::hypercube({{Interval{-1.0, 3.0}, Interval{2.0, 8.0}, Interval{7.0, 11.0}}}, {{0}, {1}, {2}});
    auto coarse = subdivide_and_embed(g, f, 0);
    auto m0 = build_mapper(coarse, cover);
    CHECK(betti_numbers(m0).b0 == 2);
    CanonicalMapper ref;
    for (std::size_t s : {4u, 8u, 16u}) {
      auto sg = subdivide_and_embed(g, f, s);
      auto m = build_mapper(sg, cover);
      CHECK(betti_numbers(m) == Betti{1, 0});
      auto canon = canonical_form(m, sg);
      if (s == 4) ref = canon;
      CHECK(canon == ref);
    }
    CHECK_FALSE(canonical_form(m0, coarse) == ref);
  }
}
