#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "isomono/cli.hpp"
#include "isomono/errors.hpp"
#include "isomono/expr.hpp"
#include "isomono/fixtures.hpp"
#include "isomono/format.hpp"
#include "isomono/operator.hpp"
#include "test_support.hpp"

using namespace isomono;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return (fixture_dir() / (name + ".json")).string(); }

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("isomono_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

/// Random expression text over x and t.
std::string random_text(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, 7), small(0, 9);
  if (depth == 0) {
    switch (pick(rng) % 3) {
      case 0: return std::to_string(small(rng));
      case 1: return "x";
      default: return "t";
    }
  }
  std::string a = random_text(rng, depth - 1), b = random_text(rng, depth - 1);
  switch (pick(rng)) {
    case 0: return a + "+" + b;
    case 1: return a + "-" + b;
    case 2: return a + "*" + b;
    case 3: return "(" + a + ")/(" + b + "+x^2+1)";
    case 4: return "(" + a + ")^" + std::to_string(small(rng) % 3);
    case 5: return "-(" + a + ")";
    case 6: return "(" + a + ")*(" + b + ")";
    default: return "(" + a + "-" + b + ")";
  }
}

}  // namespace

TEST_CASE("expression parser") {
  auto t1 = expr::parse("(3*x^2 - 2*(1+t)*x + t)/(2*z)");
  auto t2 = expr::parse(expr::print(t1));
  CHECK(*t1 == *t2);
  CHECK(expr::print(t2) == expr::print(t1));

  try {
    expr::parse("x+");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 2);
  }
  CHECK_THROWS_AS(expr::parse("(x"), SyntaxError);
  CHECK_THROWS_AS(expr::parse("x^y"), SyntaxError);
  CHECK_THROWS_AS(expr::parse("2 $ 3"), SyntaxError);
  CHECK_THROWS_AS(expr::parse_rf("no_such_name_q"), UnknownIdentifier);

  // precedence, left associativity and unary minus
  CHECK(testing::rf("2-3-4") == RationalFunction(-5));
  CHECK(testing::rf("12/3/2") == RationalFunction(2));
  CHECK(testing::rf("-2^2") == RationalFunction(-4));
  CHECK(testing::rf("2*3^2") == RationalFunction(18));
  CHECK(testing::rf("1/((x-t)*(x-1))") * testing::rf("(x-t)*(x-1)") == RationalFunction(1));
  CHECK_THROWS_AS(testing::rf("1/(x-x)"), ZeroDenominator);
}

TEST_CASE("parse, print and parse agree on random expressions") {
  std::mt19937 rng(5);
  for (int i = 0; i < 200; ++i) {
    std::string text = random_text(rng, 3);
    auto tree = expr::parse(text);
    auto again = expr::parse(expr::print(tree));
    INFO(text);
    CHECK(*tree == *again);
  }
}

TEST_CASE("formatted rational functions parse back to themselves") {
  std::mt19937 rng(8);
  std::vector<Var> vars{var("x", VarKind::principal), var("t")};
  for (int i = 0; i < 200; ++i) {
    RationalFunction g = testing::random_rf(rng, vars, 2);
    if (g.is_zero()) continue;
    RationalFunction f = testing::random_rf(rng, vars, 2) / g;
    INFO(format_rf(f));
    CHECK(testing::rf(format_rf(f)) == f);
  }
  CHECK(format_rf(testing::rf("1/(4*t*(t-1))")) == "1/(4*t*(t-1))");
  CHECK(format_rf(testing::rf("(2*t-1)/(t^2-t)")) == "(2*t-1)/(t*(t-1))");
  CHECK(format_rf(testing::rf("1/(t1*t2)")) == "1/(t1*t2)");
  CHECK(format_rf(testing::rf("1/(x^2-x*t-x+t)")) == "1/((x-1)*(x-t))");
  LinearDiffOperator op{var("t"), {testing::rf("-1/(4*t*(t-1))"), testing::rf("-(2*t-1)/(t*(t-1))")}};
  CHECK(op.to_string() == "Dt^2 + ((2*t-1)/(t*(t-1)))*Dt + 1/(4*t*(t-1))");
  CHECK(format_operator(var("t"), {RationalFunction(-1), RationalFunction(2)}) == "2*Dt - 1");
}

TEST_CASE("check command") {
  auto r = run({"check", fixture("heisenberg-obstruction"), "--mode", "full"});
  CHECK(r.code == 1);
  CHECK(r.out.find("[0, 0, 1/(t1*t2)]") != std::string::npos);

  auto j = run({"--json", "check", fixture("heisenberg-obstruction"), "--mode", "full"});
  CHECK(j.code == 1);
  Json rep = Json::parse(j.out);
  CHECK(rep["integrable"] == false);
  CHECK(rep["pairs"][0]["defect"][0][2] == "1/(t1*t2)");
  CHECK(j.out == run({"check", fixture("heisenberg-obstruction"), "--json"}).out);

  CHECK(run({"check", fixture("iterated-integrals"), "--mode", "pairwise"}).code == 0);
  CHECK(run({"check", fixture("iterated-integrals")}).code == 1);
  CHECK(run({"check", fixture("replace-bi")}).code == 0);
  CHECK(run({"check", fixture("legendre")}).code == 4);
  CHECK(run({"check", "/nonexistent/file.json"}).code == 4);
  CHECK(run({"check", fixture("heisenberg-obstruction"), "--mode", "sideways"}).code == 4);
}

TEST_CASE("malformed problem files") {
  auto bad_json = temp_file("bad.json", "{ not json");
  CHECK(run({"check", bad_json}).code == 4);
  auto bad_expr = temp_file("bad_expr.json", R"({"field": {"parametric": ["t"]}, "system": {"matrices": {"t": [["t+"]]}}})");
  auto r = run({"--json", "check", bad_expr});
  CHECK(r.code == 4);
  CHECK(Json::parse(r.out)["error"]["kind"] == "malformed-input");
  auto unknown = temp_file("unknown.json", R"({"field": {"parametric": ["t"]}, "system": {"matrices": {"t": [["s"]]}}})");
  CHECK(run({"check", unknown}).code == 4);
  auto ragged = temp_file("ragged.json", R"({"field": {"parametric": ["t"]}, "system": {"matrices": {"t": [["t", "1"]]}}})");
  CHECK(run({"check", ragged}).code == 4);
  auto tower = temp_file("tower.json", R"({"field": {"principal": ["x"], "parametric": ["t"],
      "generators": [{"name": "g", "kind": "free", "rules": {"x": "1", "t": "x"}}]},
      "system": {"matrices": {"x": [["g"]]}}})");
  CHECK(run({"check", tower}).code == 4);
}

TEST_CASE("gauge command") {
  auto id = temp_file("id.json", R"([["1","0","0"],["0","1","0"],["0","0","1"]])");
  auto r = run({"--json", "gauge", fixture("heisenberg-obstruction"), "--matrix", id});
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["matrices"]["t1"][0][1] == "1/t1");
  auto phi = temp_file("phi.json", R"({"matrix": [["1","t1","0"],["0","1","0"],["0","0","1"]]})");
  r = run({"--json", "gauge", fixture("heisenberg-obstruction"), "--matrix", phi});
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["matrices"]["t1"][0][1] == "(t1+1)/t1");
  auto singular = temp_file("singular.json", R"([["1","1","0"],["1","1","0"],["0","0","1"]])");
  CHECK(run({"gauge", fixture("heisenberg-obstruction"), "--matrix", singular}).code == 4);
}

TEST_CASE("reduce and telescope commands") {
  auto r = run({"--json", "reduce", "--integrand", "2*x/(x^2+t)^2", "--var", "x"});
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["exact"] == true);
  CHECK(run({"reduce", "--integrand", "1/(x^2+t)"}).code == 2);
  CHECK(run({"reduce", "--integrand", "x+"}).code == 4);

  r = run({"telescope", "--integrand", "1/((x-t)*(x-1))", "--var", "x", "--param", "t"});
  CHECK(r.code == 0);
  CHECK(r.out.find("text: Dt + 1/(t-1)") != std::string::npos);
  auto j = Json::parse(run({"--json", "telescope", "--integrand", "1/((x-t)*(x-1))"}).out);
  CHECK(j["operator"]["text"] == "Dt + 1/(t-1)");
  CHECK(j["minimal"] == true);
  CHECK(run({"telescope", "--integrand", "1/((x-t)*(x-1))", "--max-order", "0"}).code == 3);
  CHECK(run({"telescope", "--integrand", "-1/(x-t)^2", "--max-order", "0"}).code == 0);
  CHECK(run({"telescope", "--integrand", "1/((x-t)*(x-1)*(x+t))", "--max-order", "1"}).code == 3);
}

TEST_CASE("picard-fuchs and galois commands") {
  auto r = run({"--json", "picard-fuchs", "--curve", "x*(x-1)*(x-t)"});
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["operator"]["text"] == "Dt^2 + ((2*t-1)/(t*(t-1)))*Dt + 1/(4*t*(t-1))");
  CHECK(run({"picard-fuchs", "--curve", "x^2*(x-t)"}).code == 2);
  CHECK(run({"picard-fuchs", "--curve", "x^5-t"}).code == 2);
  CHECK(run({"picard-fuchs", "--curve", "x*(x-1)*(x-t)", "--form", "2"}).code == 4);
  CHECK(run({"picard-fuchs", "--curve", "x*(x-1)*(x-t)", "--max-order", "1"}).code == 3);

  auto g = Json::parse(run({"--json", "galois", "--integrand", "1/(x-t)"}).out);
  CHECK(g["verdict"] == "constant");
  g = Json::parse(run({"--json", "galois", "--curve", "x*(x-1)*(x-t)"}).out);
  CHECK(g["verdict"] == "nonconstant-over-k");
  CHECK(run({"galois"}).code == 4);
}

TEST_CASE("flatten command") {
  auto r = run({"--json", "flatten", fixture("heisenberg-obstruction")});
  CHECK(r.code == 1);
  CHECK(Json::parse(r.out)["witness"]["exactness"]["residue"] == "1/t2");
  auto scalar = temp_file("scalar.json", R"({"field": {"parametric": ["t1", "t2"]},
      "system": {"matrices": {"t1": [["t2"]], "t2": [["0"]]}}})");
  r = run({"--json", "flatten", scalar});
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["moves"]["t2"][0][0] == "t1");
  auto comm = temp_file("comm.json", R"({"commutant": [[["1","0","0"],["0","1","0"],["0","0","1"]]]})");
  CHECK(run({"flatten", fixture("heisenberg-obstruction"), "--commutant", comm, "--degree-bound", "2"}).code == 1);
}

TEST_CASE("examples command") {
  auto r = run({"examples", "run", "legendre"});
  CHECK(r.code == 0);
  CHECK(r.out.find("scaled_operator: -(2*t^2-2*t)*Dt^2 - (4*t-2)*Dt - 1/2") != std::string::npos);
  CHECK(r.out.find("scaled_certificate: (1/(x-t)^2)*z") != std::string::npos);
  auto all = run({"--json", "examples", "run", "all"});
  CHECK(all.code == 0);
  Json j = Json::parse(all.out);
  CHECK(j["passed"] == true);
  CHECK(j["examples"].size() == 6);
  CHECK(all.out == run({"--json", "examples", "run", "all"}).out);
  CHECK(run({"examples", "run", "missing"}).code == 4);
  CHECK(run({"examples", "list"}).code == 0);
}

TEST_CASE("command line errors") {
  CHECK(run({}).code == 4);
  CHECK(run({"frobnicate"}).code == 4);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"telescope"}).code == 4);
}
