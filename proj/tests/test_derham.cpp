#include <random>

#include "doctest.h"
#include "isomono/derham.hpp"
#include "isomono/errors.hpp"
#include "test_support.hpp"

using namespace isomono;
using isomono::testing::rf;

namespace {
Var X() { return var("x", VarKind::principal); }
Var T() { return var("t"); }

void check_identity(const RationalFunction& f, const ReductionResult& r) {
  CHECK(f == r.certificate.derivative(r.cls.var) + r.cls.representative());
}
}  // namespace

TEST_CASE("reduce examples") {
  auto r1 = reduce(rf("1/(x-t)^2"), X());
  CHECK(r1.cls.empty());
  CHECK(r1.certificate == rf("-1/(x-t)"));
  auto r2 = reduce(rf("1/(x-t)"), X());
  REQUIRE(r2.cls.residues.size() == 1);
  CHECK(r2.cls.residues.at(rf("t")) == rf("1"));
  CHECK(r2.certificate.is_zero());
  auto r3 = reduce(rf("x/(x-1)^2"), X());
  REQUIRE(r3.cls.residues.size() == 1);
  CHECK(r3.cls.residues.at(rf("1")) == rf("1"));
  CHECK(r3.certificate == rf("-1/(x-1)"));
  CHECK_THROWS_AS(reduce(rf("1/(x^2+t)"), X()), NonLinearFactor);
  for (const char* e : {"(x^3+t)/((x-t)^3*(x+1)^2*x)", "t^2*x^4 + 1/x", "1/((x-t)^2*(2*x-1)^3)", "x/(x^2-t^2)^2"}) {
    auto f = rf(e);
    check_identity(f, reduce(f, X()));
  }
}

TEST_CASE("exact parts with irreducible quadratic denominators reduce") {
  Var x = var("x");
  auto exact = rf("t/(x^2-t)").derivative(x);
  auto r = reduce(exact, x);
  CHECK(r.cls.empty());
  CHECK(r.certificate.derivative(x) == exact);
  auto mixed = reduce(rf("1/(x-t)") + exact, x);
  REQUIRE(mixed.cls.residues.size() == 1);
  CHECK(mixed.cls.residues.begin()->first == rf("t"));
  CHECK_THROWS_AS(reduce(rf("1/(x^2-t)"), x), NonLinearFactor);
}

TEST_CASE("gm_derivative examples") {
  H1Class c{X(), {{rf("t"), rf("1")}}};
  CHECK(gm_derivative(c, T()).empty());
  H1Class d{X(), {{rf("t"), rf("1/(t-1)")}, {rf("1"), rf("-1/(t-1)")}}};
  H1Class expect{X(), {{rf("t"), rf("-1/(t-1)^2")}, {rf("1"), rf("1/(t-1)^2")}}};
  CHECK(gm_derivative(d, T()) == expect);
  CHECK(gm_derivative(H1Class{X(), {}}, T()).empty());
  CHECK(gm_derivative(reduce(rf("1/((x-t)*(x-1))"), X()).cls, T()) ==
        reduce(rf("1/((x-t)*(x-1))").derivative(T()), X()).cls);
}

TEST_CASE("reduction properties on random inputs") {
  std::mt19937 rng(5);
  Var x = X(), t = T();
  std::uniform_int_distribution<int> small(-3, 3);
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    // Random g with x-linear poles at rational multiples of t and constants.
    RationalFunction g = testing::random_rf(rng, {x, t}, 2).num();
    for (int k = 0; k < 2; ++k) {
      auto pole = RationalFunction(Q(small(rng))) + RationalFunction(Q(small(rng))) * rf("t");
      g = g / pow(rf("x") - pole, 1 + k);
    }
    auto r = reduce(g.derivative(x), x);
    CHECK(r.cls.empty());
    CHECK((r.certificate - g).derivative(x).is_zero());
    auto f = g + rf("t^2/(x-t)") + rf("1/(x+1)");
    auto rf_ = reduce(f, x);
    check_identity(f, rf_);
    CHECK(gm_derivative(rf_.cls, t) == reduce(f.derivative(t), x).cls);
    ++checked;
  }
  CHECK(checked == 60);
}

TEST_CASE("telescoper examples") {
  auto r1 = telescoper(rf("1/(x-t)"), X(), T());
  REQUIRE(r1);
  CHECK(r1->op.order() == 1);
  CHECK(r1->op.c[0].is_zero());
  CHECK(r1->certificate.derivative(X()) == rf("1/(x-t)^2"));

  auto r2 = telescoper(rf("1/((x-t)*(x-1))"), X(), T());
  REQUIRE(r2);
  CHECK(r2->op.order() == 1);
  CHECK(r2->op.coefficient(0) == rf("1/(t-1)"));
  CHECK(r2->op.to_string() == "Dt + 1/(t-1)");
  CHECK_FALSE(dependence_exists(r2->classes, 0));

  auto r3 = telescoper(rf("t/x"), X(), T());
  REQUIRE(r3);
  CHECK(r3->op.coefficient(0) == rf("-1/t"));
  CHECK(r3->certificate.is_zero());

  auto r0 = telescoper(rf("1/(x-t)^2"), X(), T());
  REQUIRE(r0);
  CHECK(r0->op.order() == 0);

  // Invariance under adding an exact term.
  auto r4 = telescoper(rf("1/((x-t)*(x-1))") + rf("t/(x-t)^3").derivative(X()), X(), T());
  REQUIRE(r4);
  CHECK(r4->op == r2->op);
}

TEST_CASE("exact2form_solvable") {
  Var t1 = var("t1"), t2 = var("t2");
  auto h = exact2form_solvable(rf("1/(t1*t2)"), t1, t2);
  CHECK(h.status == Exact2FormResult::Status::unsolvable);
  CHECK(h.pole == rf("0"));
  CHECK(h.residue == rf("1/t2"));
  REQUIRE(h.residue_class);
  CHECK_FALSE(h.residue_class->empty());

  auto s = exact2form_solvable(rf("1/(t1^2*t2^2)"), t1, t2);
  REQUIRE(s.status == Exact2FormResult::Status::solvable);
  CHECK(s.f1.derivative(t2) - s.f2.derivative(t1) == rf("1/(t1^2*t2^2)"));
  CHECK(s.f1.is_zero());

  auto z = exact2form_solvable(RationalFunction(), t1, t2);
  CHECK(z.status == Exact2FormResult::Status::solvable);
  CHECK(z.f1.is_zero());
  CHECK(z.f2.is_zero());

  auto p = exact2form_solvable(rf("1/((t1-t2)*t2^2) + t1"), t1, t2);
  REQUIRE(p.status == Exact2FormResult::Status::solvable);
  CHECK(exact2form_solvable(rf("1/(t1^2+t2)"), t1, t2).status == Exact2FormResult::Status::unsupported);
}
