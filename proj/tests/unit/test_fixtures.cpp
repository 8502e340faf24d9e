#include <doctest.h>

#include "fixture_checks.hpp"

TEST_SUITE("fixtures") {
  TEST_CASE("library agrees with the frozen brute-force oracles") {
    auto checks = fixtures::run_all();
    REQUIRE(!checks.empty());
    for (const auto& c : checks) {
      INFO(c.name);
      CHECK_MESSAGE(c.ok, c.detail);
    }
  }
}
