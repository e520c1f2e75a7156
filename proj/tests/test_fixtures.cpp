#include <set>

#include "doctest.h"
#include "isomono/errors.hpp"
#include "isomono/fixtures.hpp"
#include "isomono/report.hpp"

using namespace isomono;

TEST_CASE("every named fixture is present and passes") {
  auto names = fixture_names();
  const std::set<std::string> want{"heisenberg-obstruction", "iterated-integrals", "legendre",
                                   "incomplete-gamma",       "replace-bi",         "per-derivation-triviality"};
  CHECK(std::set<std::string>(names.begin(), names.end()) == want);
  for (const auto& name : names) {
    auto out = run_fixture(load_fixture(name));
    CHECK(out.name == name);
    CHECK_FALSE(out.checks.empty());
    for (const auto& c : out.checks) {
      INFO(name << ": " << c.name << " " << c.detail);
      CHECK(c.passed);
    }
  }
  CHECK_THROWS_AS(load_fixture("no-such-example"), MalformedInput);
}

TEST_CASE("fixture expectations can fail") {
  Json doc = load_fixture("heisenberg-obstruction");
  doc["expect"] = Json::array({Json{{"kind", "integrability"}, {"mode", "full"}, {"integrable", true}},
                               Json{{"kind", "defect"}, {"u", "t1"}, {"v", "t2"},
                                    {"matrix", Json::parse(R"J([["0","0","1/(t1*t2)"],["0","0","0"],["0","0","0"]])J")}}});
  auto out = run_fixture(doc);
  CHECK_FALSE(out.passed);
  REQUIRE(out.checks.size() == 3);
  CHECK(out.checks[0].passed);  // stored convention round trip
  CHECK_FALSE(out.checks[1].passed);
  CHECK_FALSE(out.checks[2].passed);

  doc["expect"] = Json::array({Json{{"kind", "nonsense"}}});
  CHECK_THROWS_AS(run_fixture(doc), MalformedInput);
}

TEST_CASE("dual fixtures convert and convert back") {
  Json doc = load_fixture("per-derivation-triviality");
  Problem p = load_problem(doc);
  REQUIRE(p.system);
  CHECK(p.dual);
  CHECK(p.system->matrix("t2")(0, 0) == RationalFunction(1));
  auto stored = stored_form(*p.system, true);
  CHECK(parse_matrix(*p.field, stored.at("t2")) == parse_matrix(*p.field, doc["system"]["matrices"]["t2"]));
}

TEST_CASE("legendre report carries the scaled operator") {
  auto out = run_fixture(load_fixture("legendre"));
  Json j = to_json(out);
  std::string text = j.dump();
  CHECK(text.find("-2*t^2+2*t") != std::string::npos);
  bool found = false;
  for (const auto& c : out.checks)
    if (c.name == "scaled coefficients") {
      found = true;
      CHECK(c.data.at("scaled_certificate").get<std::string>().find("z") != std::string::npos);
    }
  CHECK(found);
}

TEST_CASE("reports are deterministic and round trip") {
  auto out = run_fixture(load_fixture("heisenberg-obstruction"));
  Json j = to_json(out);
  const std::string a = emit_report(j, ReportFormat::json);
  CHECK(a == emit_report(to_json(run_fixture(load_fixture("heisenberg-obstruction"))), ReportFormat::json));
  CHECK(Json::parse(a) == j);
  CHECK(emit_report(Json::object(), ReportFormat::json) == "{}\n");
  CHECK(emit_report(Json::object(), ReportFormat::human) == "{}\n");

  std::string human = emit_report(j, ReportFormat::human);
  CHECK(human.find("[0, 0, 1/(t1*t2)]") != std::string::npos);
  CHECK(human == emit_report(j, ReportFormat::human));
}

TEST_CASE("human rendering layout") {
  Json j{{"b", Json::array({Json::array({"1", "0"}), Json::array({"0", "1"})})},
         {"a", "x"},
         {"c", Json::array({"p", "q"})},
         {"d", Json::array({Json{{"k", 1}}})},
         {"e", Json::object()}};
  CHECK(emit_report(j, ReportFormat::human) ==
        "a: x\n"
        "b:\n"
        "  [1, 0]\n"
        "  [0, 1]\n"
        "c: [p, q]\n"
        "d:\n"
        "  -\n"
        "    k: 1\n"
        "e: {}\n");
}
