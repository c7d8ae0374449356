#include <iostream>

#include "doctest.h"
#include "mtet/acceptance.hpp"

using namespace mtet;

TEST_CASE("acceptance suite: one pass line per criterion") {
  AcceptanceReport report = run_acceptance(std::cout);
  REQUIRE(report.criteria.size() == 10);
  for (const auto& c : report.criteria) {
    INFO("criterion ", c.id, " ", c.name, ": ", c.detail);
    CHECK(c.passed);
  }
  CHECK(report.all_passed());
}
