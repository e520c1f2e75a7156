#include <random>

#include "doctest.h"
#include "isomono/curve.hpp"
#include "isomono/errors.hpp"
#include "isomono/linsolve.hpp"
#include "test_support.hpp"

using namespace isomono;
using testing::rf;

namespace {

CurveSpec legendre() { return CurveSpec::make(rf("x*(x-1)*(x-t)").num(), var("x"), var("t")); }

CurveElement odd(const std::string& text) { return {RationalFunction(), rf(text)}; }

}  // namespace

TEST_CASE("curve specs") {
  CHECK_NOTHROW(legendre());
  CHECK_THROWS_AS(CurveSpec::make(rf("x^2*(x-t)").num(), var("x"), var("t")), Unsupported);
  CHECK_THROWS_AS(CurveSpec::make(rf("x^5-t").num(), var("x"), var("t")), Unsupported);
  CHECK(CurveSpec::make(rf("x^4-t").num(), var("x"), var("t")).basis_size() == 3);
}

TEST_CASE("curve arithmetic and derivations") {
  auto c = legendre();
  auto z = CurveElement::z();
  CHECK(multiply(c, z, z) == CurveElement{RationalFunction(c.f), RationalFunction()});
  CHECK(multiply(c, z, inverse(c, z)) == CurveElement{RationalFunction(1), RationalFunction()});
  CHECK(curve_derive(c, z, c.x) == odd("(3*x^2-2*(1+t)*x+t)/(2*x*(x-1)*(x-t))"));
  CHECK(curve_derive(c, z, c.t) == odd("-x*(x-1)/(2*x*(x-1)*(x-t))"));
  // d_x of z/(x-t)^2 by the quotient rule.
  RationalFunction fp = rf("3*x^2-2*(1+t)*x+t"), f(c.f);
  CHECK(curve_derive(c, odd("1/(x-t)^2"), c.x) ==
        CurveElement{RationalFunction(), fp / (RationalFunction(2) * f * rf("(x-t)^2")) - rf("2/(x-t)^3")});
}

TEST_CASE("curve derivations: Leibniz and commuting partials") {
  auto c = legendre();
  std::mt19937 rng(41);
  std::vector<Var> vars{c.x, c.t};
  for (int i = 0; i < 100; ++i) {
    CurveElement a{testing::random_rf(rng, vars, 1), testing::random_rf(rng, vars, 1)};
    CurveElement b{testing::random_rf(rng, vars, 1), testing::random_rf(rng, vars, 1)};
    Var v = i % 2 ? c.x : c.t;
    CHECK(curve_derive(c, multiply(c, a, b), v) ==
          multiply(c, curve_derive(c, a, v), b) + multiply(c, a, curve_derive(c, b, v)));
    CHECK(curve_derive(c, curve_derive(c, a, c.x), c.t) == curve_derive(c, curve_derive(c, a, c.t), c.x));
  }
}

TEST_CASE("curve reduction examples") {
  auto c = legendre();
  auto exact = curve_reduce(c, curve_derive(c, CurveElement::z(), c.x));
  CHECK(exact.cls.is_zero());
  CHECK(exact.certificate == CurveElement::z());

  // x^2 = (f' + 2(1+t)x - t)/3
  auto r = curve_reduce(c, odd("x^2/(x*(x-1)*(x-t))"));
  REQUIRE(r.cls.coords.size() == 2);
  CHECK(r.cls.coords[0] == rf("-t/3"));
  CHECK(r.cls.coords[1] == rf("2*(1+t)/3"));
  CHECK(r.certificate == odd("2/3"));

  // 1/z^3 through the Bezout step.
  auto inv3 = curve_reduce(c, odd("1/(x*(x-1)*(x-t))^2"));
  CHECK(curve_derive(c, inv3.certificate, c.x) + representative(c, inv3.cls) == odd("1/(x*(x-1)*(x-t))^2"));
  CHECK_FALSE(inv3.cls.is_zero());

  // Double pole away from the branch points reduces; a simple one does not.
  auto h = curve_reduce(c, curve_derive(c, odd("1/(x+1)"), c.x) + basis_form(c, 1));
  CHECK(h.cls.coords[1] == RationalFunction(1));
  CHECK(h.cls.coords[0].is_zero());
  CHECK_THROWS_AS(curve_reduce(c, odd("1/(x+1)")), UnsupportedPoles);
  CHECK_THROWS_AS(curve_reduce(c, CurveElement{rf("1/x"), RationalFunction()}), UnsupportedPoles);
  CHECK(curve_reduce(c, CurveElement{rf("1/x^2"), RationalFunction()}).certificate.even == rf("-1/x"));
}

TEST_CASE("curve reduction identity on random forms") {
  auto c = legendre();
  std::mt19937 rng(43);
  std::vector<Var> vars{c.x, c.t};
  for (int i = 0; i < 30; ++i) {
    CurveElement a{RationalFunction(), testing::random_rf(rng, vars, 1)};
    auto da = curve_derive(c, a, c.x);
    auto r = curve_reduce(c, da);  // throws on failed identity
    CHECK(r.cls.is_zero());
    CurveElement w = da + RationalFunction(testing::random_poly(rng, vars, 3)) * basis_form(c, 0);
    CHECK_NOTHROW(curve_reduce(c, w));
  }
}

TEST_CASE("Legendre Picard-Fuchs operator") {
  auto c = legendre();
  auto pf = picard_fuchs(c, 0);
  REQUIRE(pf);
  CHECK(pf->op.order() == 2);
  CHECK(pf->op.to_string() == "Dt^2 + ((2*t-1)/(t*(t-1)))*Dt + 1/(4*t*(t-1))");
  RationalFunction lead = rf("-2*t*(t-1)");
  CHECK(lead * pf->op.coefficient(2) == lead);
  CHECK(lead * pf->op.coefficient(1) == rf("-(4*t-2)"));
  CHECK(lead * pf->op.coefficient(0) == rf("-1/2"));
  CHECK(lead * pf->certificate == odd("1/(x-t)^2"));
  CHECK_FALSE(curve_dependence_exists(pf->classes, 1));
  CHECK_FALSE(curve_dependence_exists(pf->classes, 0));

  // The non-monic operator applied to 1/z against d_x(z/(x-t)^2).
  auto w0 = basis_form(c, 0);
  auto w1 = curve_derive(c, w0, c.t);
  auto w2 = curve_derive(c, w1, c.t);
  CurveElement lhs = rf("-2*t*(t-1)") * w2 + rf("-(4*t-2)") * w1 + rf("-1/2") * w0;
  CHECK(lhs - curve_derive(c, odd("1/(x-t)^2"), c.x) == CurveElement{});
}

TEST_CASE("Picard-Fuchs of a constant family") {
  auto c = CurveSpec::make(rf("x*(x-1)*(x-2)").num(), var("x"), var("t"));
  auto pf = picard_fuchs(c, 0);
  REQUIRE(pf);
  CHECK(pf->op.to_string() == "Dt");
  CHECK(pf->certificate.is_zero());
  auto pf1 = picard_fuchs(legendre(), 1);
  REQUIRE(pf1);
  CHECK(pf1->op.order() == 2);
  CHECK_FALSE(picard_fuchs(legendre(), 0, 1).has_value());
}
