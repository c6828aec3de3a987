#include <string>

#include "doctest.h"
#include "scenarios.hpp"

// Runs every registered end-to-end scenario under doctest so failures show
// up individually in ctest output.

TEST_CASE("the scenario catalog is substantial") {
  CHECK(scenarios::all_scenarios().size() >= 25);
}

TEST_CASE("every end-to-end scenario passes") {
  for (const scenarios::Scenario& scenario : scenarios::all_scenarios()) {
    SUBCASE(scenario.name.c_str()) {
      scenarios::CheckContext ctx;
      scenario.run(ctx);
      for (const std::string& failure : ctx.failures) {
        INFO(failure);
        CHECK(false);
      }
      CHECK(ctx.failures.empty());
    }
  }
}
