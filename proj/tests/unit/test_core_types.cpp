#include <doctest.h>

#include <memory>
#include <sstream>

#include "lsmapper/codomains.hpp"
#include "lsmapper/error.hpp"
#include "lsmapper/io.hpp"
#include "lsmapper/length_space.hpp"
#include "lsmapper/types.hpp"

using namespace lsm;

TEST_SUITE("core_types") {
  TEST_CASE("point cloud csv") {
    std::istringstream in("0,0\n1,0\n0,1");
    auto cloud = parse_point_cloud(in);
    CHECK(cloud.size() == 3);
    CHECK(cloud.dim() == 2);
    CHECK(cloud.point(2)[1] == 1.0);

    std::istringstream one("5");
    auto single = parse_point_cloud(one);
    CHECK(single.size() == 1);
    CHECK(single.dim() == 1);
  }

  TEST_CASE("malformed csv reports a format error with the row") {
    std::istringstream bad("1,2\n3,abc\n");
    try {
      parse_point_cloud(bad);
      FAIL("expected a format error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Format);
      CHECK(std::string(e.what()).find("row") != std::string::npos);
    }
    std::istringstream empty("");
    CHECK_THROWS_AS(parse_point_cloud(empty), Error);
  }

  TEST_CASE("finite set diameter") {
    EuclideanCodomain r2(2);
    std::vector<Element> single{Vector{3.0, 1.0}};
    CHECK(finite_set_diameter(single, r2) == 0.0);
    std::vector<Element> pair{Vector{0.0, 0.0}, Vector{3.0, 4.0}};
    CHECK(finite_set_diameter(pair, r2) == doctest::Approx(5.0));
    std::vector<Element> none;
    try {
      finite_set_diameter(none, r2);
      FAIL("expected an empty-input error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::EmptyInput);
    }
  }

  TEST_CASE("pseudometric validation") {
    std::vector<double> zero(16, 0.0);
    CHECK_FALSE(validate_pseudometric(4, zero));

    // d(a,b) = d(b,c) = 1 but d(a,c) = 3.
    std::vector<double> bad{0, 1, 3, 1, 0, 1, 3, 1, 0};
    auto v = validate_pseudometric(3, bad);
    REQUIRE(v);
    CHECK(v->kind == PseudometricViolation::Kind::Triangle);

    std::vector<double> asym{0, 1, 2, 0};
    auto s = validate_pseudometric(2, asym);
    REQUIRE(s);
    CHECK(s->kind == PseudometricViolation::Kind::Symmetry);
  }

  TEST_CASE("euclidean codomain axioms on sampled triples") {
    EuclideanCodomain r3(3);
    Rng rng(7);
    std::normal_distribution<double> n01;
    auto draw = [&] { return Element{Vector{n01(rng), n01(rng), n01(rng)}}; };
    for (int t = 0; t < 200; ++t) {
      auto a = draw(), b = draw(), c = draw();
      CHECK(r3.distance(a, a) == 0.0);
      CHECK(r3.distance(a, b) == r3.distance(b, a));
      CHECK(r3.distance(a, c) <= r3.distance(a, b) + r3.distance(b, c) + kTolerance);
      CHECK(as_vector(r3.geodesic_sample(a, b, 0.0)) == as_vector(a));
      CHECK(as_vector(r3.geodesic_sample(a, b, 1.0)) == as_vector(b));
    }
  }

  TEST_CASE("element encoding separates values") {
    Element a = Vector{1.0, 2.0};
    Element b = Vector{1.0, 2.0};
    Element c = Vector{1.0, 2.0000001};
    CHECK(encode(a) == encode(b));
    CHECK(encode(a) != encode(c));
    LabeledGraph g(3);
    g.add_edge(0, 1);
    LabeledGraph h(3);
    h.add_edge(0, 1);
    CHECK(encode(Element{g}) == encode(Element{h}));
    h.add_edge(1, 2);
    CHECK(encode(Element{g}) != encode(Element{h}));
  }

  TEST_CASE("histogram codomain rejects values off the simplex") {
    HistogramCodomain z(3);
    CHECK_NOTHROW(z.validate(Element{Vector{0.2, 0.3, 0.5}}));
    CHECK_THROWS_AS(z.validate(Element{Vector{0.9, 0.3, 0.5}}), Error);
    CHECK_THROWS_AS(z.validate(Element{Vector{-0.1, 0.6, 0.5}}), Error);
  }

  TEST_CASE("pseudometric csv round trip") {
    auto m = FinitePseudometricSpace::from_matrix(3, {0, 1, 2, 1, 0, 1.5, 2, 1.5, 0});
    std::istringstream in(format_pseudometric_csv(m));
    auto back = parse_pseudometric_csv(in);
    CHECK(back.labels() == m.labels());
    CHECK(back.matrix() == m.matrix());
    CHECK(m.diameter() == 2.0);
  }
}
