#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "isomono/parallel.hpp"
#include "isomono/problem.hpp"

namespace isomono {

struct FixtureCheck {
  std::string name;
  int criterion = 0;  // acceptance criterion the check belongs to, 0 if none
  bool passed = false;
  std::string detail;
  Json data;
};

struct FixtureOutcome {
  std::string name;
  bool passed = true;
  std::vector<FixtureCheck> checks;
};

/// Directory holding the named example fixtures: $ISOMONO_FIXTURES when set,
/// otherwise the fixtures/ directory of the source tree.
std::filesystem::path fixture_dir();
/// Names of every *.json fixture, sorted.
std::vector<std::string> fixture_names();
/// Throws MalformedInput for an unknown name.
Json load_fixture(const std::string& name);

/// Loads the problem sections of a fixture and evaluates its "expect" list.
/// Errors raised while evaluating an expectation fail that check only.
FixtureOutcome run_fixture(const Json& doc, Exec exec = default_exec());

Json to_json(const FixtureOutcome& o);

}  // namespace isomono
