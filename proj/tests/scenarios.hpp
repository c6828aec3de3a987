// scenarios.hpp - End-to-end migration scenarios with byte-exact expected
// outputs, shared between the doctest wrapper and the acceptance binary.
#pragma once

#include <functional>
#include <string>
#include <vector>

namespace scenarios {

// Collects assertion failures; a scenario passes when it records none.
struct CheckContext {
  std::vector<std::string> failures;

  void require(bool condition, const std::string& what) {
    if (!condition) failures.push_back(what);
  }
  void equal(const std::string& got, const std::string& want,
             const std::string& what) {
    if (got != want) {
      failures.push_back(what + ": got\n<<<\n" + got + ">>>\nwant\n<<<\n" +
                         want + ">>>");
    }
  }
  void equal(long long got, long long want, const std::string& what) {
    if (got != want) {
      failures.push_back(what + ": got " + std::to_string(got) + ", want " +
                         std::to_string(want));
    }
  }
};

struct Scenario {
  std::string name;
  std::function<void(CheckContext&)> run;
};

const std::vector<Scenario>& all_scenarios();

}  // namespace scenarios
