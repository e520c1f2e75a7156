#include <random>

#include "doctest.h"
#include "isomono/errors.hpp"
#include "isomono/tower.hpp"
#include "test_support.hpp"

using namespace isomono;

TEST_CASE("gamma tower derivations") {
  auto t = testing::gamma_tower();
  CHECK(t->derive(t->parse("h"), "t") == t->parse("l*h"));
  CHECK(t->derive(t->parse("l"), "x") == t->parse("1/x"));
  CHECK(t->check_commutativity(3).empty());
  auto hxt = t->derive(t->derive(t->parse("h"), "x"), "t");
  CHECK(hxt == t->parse("(l*((t-1)/x - 1) + 1/x)*h"));
  // (d_t - 1) h = d_x(gamma_t - gamma)
  auto lhs = t->derive(t->parse("h"), "t") - t->parse("h");
  auto rhs = t->derive(t->parse("gamma__t - gamma"), "x");
  CHECK(lhs == rhs);
  CHECK_NOTHROW(t->validate(3));
}

TEST_CASE("inconsistent tower is reported") {
  auto t = std::make_shared<Tower>();
  t->add_coordinate("x", VarKind::principal);
  t->add_coordinate("t", VarKind::parametric);
  t->add_generator("g", GeneratorKind::defined);
  t->set_rule("g", "x", t->parse("t"));
  t->set_rule("g", "t", t->parse("0"));
  auto w = t->check_commutativity(1);
  REQUIRE(w.size() == 1);
  CHECK(w[0].generator == "g");
  CHECK(w[0].de != w[0].ed);
  CHECK(((w[0].de == t->parse("1") && w[0].ed.is_zero()) || (w[0].ed == t->parse("1") && w[0].de.is_zero())));
  CHECK_THROWS_AS(t->validate(1), InconsistentTower);
  CHECK_NOTHROW(t->validate(1, TowerPolicy::warn));
}

TEST_CASE("free generators and jets") {
  auto t = testing::iterated_tower();
  Var a = t->extend_jets("I1", {{"x", 1}});
  CHECK(t->extend_jets("I1", {{"x", 1}}) == a);
  CHECK(t->extend_jets("I1", {{"x", 1}, {"t1", 1}}) == t->extend_jets("I1", {{"t1", 1}, {"x", 1}}));
  CHECK(t->parse("I1__t1__x") == t->parse("I1__x__t1"));
  CHECK(t->derive(t->parse("I1"), "t1") == t->parse("I1__t1"));
  CHECK(t->derive(t->derive(t->parse("I1"), "t1"), "x") == t->derive(t->derive(t->parse("I1"), "x"), "t1"));
  CHECK(t->derive(t->parse("I"), "x") == t->parse("I1__x*I2"));
  CHECK_THROWS_AS(t->extend_jets("I", {{"x", 1}}), NotFree);
  auto g = testing::gamma_tower();
  CHECK_THROWS_AS(g->extend_jets("h", {{"x", 1}}), NotFree);
  CHECK_THROWS_AS(g->parse("nope"), UnknownIdentifier);

  auto free_only = std::make_shared<Tower>();
  free_only->add_coordinate("x", VarKind::principal);
  free_only->add_coordinate("s", VarKind::parametric);
  free_only->add_generator("u", GeneratorKind::free);
  CHECK(free_only->check_commutativity(3).empty());
}

TEST_CASE("iterated integral tower is consistent") {
  auto t = testing::iterated_tower();
  CHECK(t->check_commutativity(2).empty());
}

TEST_CASE("missing rule for a defined generator") {
  auto t = std::make_shared<Tower>();
  t->add_coordinate("x", VarKind::principal);
  t->add_coordinate("t", VarKind::parametric);
  t->add_generator("e", GeneratorKind::defined);
  t->set_rule("e", "x", t->parse("e"));
  CHECK_THROWS_AS(t->derive(t->parse("e"), "t"), MissingRule);
}

TEST_CASE("tower derivations on random elements") {
  auto t = testing::gamma_tower();
  std::vector<Var> vars;
  for (const char* n : {"x", "t", "l", "h", "gamma", "gamma__t"})
    vars.push_back(t->parse(n).num().variables().front());
  std::mt19937 rng(17);
  for (int i = 0; i < 100; ++i) {
    auto a = testing::random_rf(rng, vars, 2);
    auto b = testing::random_rf(rng, vars, 2);
    CHECK(t->derive(t->derive(a, "x"), "t") == t->derive(t->derive(a, "t"), "x"));
    if (i < 30) {
      CHECK(t->derive(a * b, "x") == t->derive(a, "x") * b + a * t->derive(b, "x"));
      CHECK(t->derive(a + RationalFunction(Q(3)) * b, "t") ==
            t->derive(a, "t") + RationalFunction(Q(3)) * t->derive(b, "t"));
    }
  }
}
