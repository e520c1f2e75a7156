#include <random>

#include "doctest.h"
#include "isomono/derham.hpp"
#include "isomono/errors.hpp"
#include "isomono/galois.hpp"
#include "isomono/linsolve.hpp"
#include "test_support.hpp"

using namespace isomono;
using testing::rf;

namespace {

LinearDiffOperator op(const std::string& param, std::vector<std::string> coeffs) {
  LinearDiffOperator d{var(param), {}};
  for (const auto& c : coeffs) d.c.push_back(rf(c));
  return d;
}

}  // namespace

TEST_CASE("rational solutions of small operators") {
  auto s = rational_solutions(op("t", {"0"}));
  REQUIRE(s.size() == 1);
  CHECK(s[0] == RationalFunction(1));
  CHECK(rational_solutions(op("t", {"1"})).empty());
  auto p = rational_solutions(op("t", {"-1/(t-1)"}));
  REQUIRE(p.size() == 1);
  CHECK(p[0] == rf("1/(t-1)"));
  CHECK_THROWS_AS(rational_solutions(op("t", {"1/(t^2+1)"})), Unsupported);
  CHECK_THROWS_AS(rational_solutions(op("t", {"x"})), Unsupported);
  // Dt^2 has {1, t}.
  CHECK(rational_solutions(op("t", {"0", "0"})).size() == 2);
}

TEST_CASE("Dt - 1 has no polynomial solution up to degree 10") {
  // u = sum u_k t^k with u' = u: coefficient system over Q.
  RMatrix m(11, 11);
  for (std::size_t k = 0; k <= 10; ++k) {
    m(k, k) = RationalFunction(-1);
    if (k + 1 <= 10) m(k, k + 1) = RationalFunction(static_cast<long>(k + 1));
  }
  auto sol = linear_solve(m, std::vector<RationalFunction>(11));
  CHECK(sol.nullspace.empty());
}

TEST_CASE("rational solutions recover planted logarithmic derivatives") {
  std::mt19937 rng(53);
  std::uniform_int_distribution<int> root(-4, 4), mult(-2, 2);
  auto t = RationalFunction::variable(var("t"));
  for (int i = 0; i < 20; ++i) {
    RationalFunction u(1);
    for (int k = 0; k < 3; ++k) u *= pow(t - RationalFunction(root(rng)), mult(rng));
    LinearDiffOperator d{var("t"), {u.derivative(var("t")) / u}};
    auto sols = rational_solutions(d);
    REQUIRE(sols.size() == 1);
    CHECK((sols[0] / u).is_constant());
    CHECK(d.apply(sols[0]).is_zero());
  }
}

TEST_CASE("companion system shapes") {
  auto f = testing::gamma_tower();
  auto d = op("t", {"1"});
  auto b = f->parse("h");
  auto a = f->parse("gamma__t - gamma");
  auto s = companion_system(d, b, a, f);
  CHECK(s.matrix("x") == RMatrix(2, 2, {RationalFunction(), RationalFunction(), b, RationalFunction()}));
  CHECK(s.matrix("t") == RMatrix(2, 2, {RationalFunction(), RationalFunction(), a, RationalFunction(1)}));
  CHECK(check_integrability(s, CheckMode::full).integrable());

  auto rat = Tower::rational({"x"}, {"t"});
  auto s2 = companion_system(op("t", {"2", "t"}), rf("1/(x-t)"), rf("x"), rat);
  CHECK(s2.matrix("t")(2, 0) == rf("x"));
  CHECK(s2.matrix("t")(2, 1) == RationalFunction(2));
  CHECK(s2.matrix("t")(2, 2) == rf("t"));
  CHECK(s2.matrix("t")(1, 2) == RationalFunction(1));
  CHECK(s2.matrix("x")(2, 0) == rf("1/(x-t)^2"));
  auto rep = check_integrability(s2, CheckMode::full);
  CHECK_FALSE(rep.integrable());
  CHECK_FALSE(rep.pairs.front().defect.is_zero());
}

TEST_CASE("companion flatness matches the telescoping identity") {
  std::mt19937 rng(59);
  auto field = Tower::rational({"x"}, {"t"});
  Var x = var("x"), t = var("t");
  int holds = 0;
  for (int i = 0; i < 50; ++i) {
    LinearDiffOperator d{t, {}};
    std::size_t order = 1 + static_cast<std::size_t>(i % 2);
    for (std::size_t k = 0; k < order; ++k) d.c.push_back(testing::random_rf(rng, {t}, 1));
    auto g = testing::random_rf(rng, {x, t}, 1);
    RationalFunction b, a;
    if (i % 3 == 0) {
      b = testing::random_rf(rng, {x, t}, 1);
      a = testing::random_rf(rng, {x, t}, 1);
    } else {
      b = g.derivative(x);
      a = d.apply(g);
      if (i % 3 == 2) a += testing::random_rf(rng, {x, t}, 1);
    }
    bool identity = d.apply(b) == a.derivative(x);
    holds += identity;
    CHECK(check_integrability(companion_system(d, b, a, field), CheckMode::full).integrable() == identity);
  }
  CHECK(holds > 10);
}

TEST_CASE("Galois descriptors") {
  Var x = var("x"), t = var("t");
  auto simple = galois_descriptor_rational(rf("1/(x-t)"), x, t);
  REQUIRE(simple);
  CHECK(simple->op.to_string() == "Dt");
  CHECK(simple->verdict == GaloisDescriptor::Verdict::constant);
  REQUIRE(simple->solutions.size() == 1);

  auto shifted = galois_descriptor_rational(rf("1/(x-t)") + rf("t/(x^2-t)").derivative(x), x, t);
  REQUIRE(shifted);
  CHECK(shifted->op == simple->op);
  CHECK(shifted->verdict == simple->verdict);

  auto f = testing::gamma_tower();
  auto gamma = galois_descriptor_tower(*f, f->parse("h"), op("t", {"1"}), f->parse("gamma__t - gamma"));
  CHECK(gamma.verdict == GaloisDescriptor::Verdict::nonconstant_over_k);
  CHECK(gamma.solutions.empty());
  CHECK_FALSE(gamma.minimality_certified);
  CHECK_THROWS_AS(galois_descriptor_tower(*f, f->parse("h"), op("t", {"1"}), f->parse("gamma")), PreconditionFailed);

  auto legendre = CurveSpec::make(rf("x*(x-1)*(x-t)").num(), x, t);
  auto lg = galois_descriptor_curve(legendre, 0);
  REQUIRE(lg);
  CHECK(lg->op.order() == 2);
  CHECK(lg->verdict == GaloisDescriptor::Verdict::nonconstant_over_k);
  CHECK(lg->solutions.empty());
}

TEST_CASE("derivation rebase") {
  auto f = Tower::rational({}, {"t1", "t2"});
  ConnectionSystem s(f, 1);
  s.set("t1", RMatrix(1, 1));
  s.set("t2", RMatrix::identity(1));

  DerivationRebase id{{"t1", "t2"}, {"t1", "t2"}, RMatrix::identity(2)};
  CHECK(rebase_derivations(s, id) == s);

  DerivationRebase scale{{"t1", "t2"}, {"t1", "u2"}, RMatrix(2, 2, {RationalFunction(1), RationalFunction(),
                                                                    RationalFunction(), rf("t1")})};
  CHECK(rebase_derivations(s, scale).matrix("u2") == RMatrix(1, 1, {rf("t1")}));

  DerivationRebase r{{"t1", "t2"}, {"d1", "d2"}, RMatrix(2, 2, {rf("t1"), RationalFunction(), rf("t1"), RationalFunction(1)})};
  auto rb = rebase_derivations(s, r);
  CHECK(rb.matrix("d1") == RMatrix(1, 1));
  CHECK(rb.matrix("d2") == RMatrix::identity(1));
  CHECK(rebase_derivations(rb, r.inverse()) == s);
  CHECK(rb.field().derive(rf("t1"), "d2") == rf("t1"));

  DerivationRebase singular{{"t1", "t2"}, {"d1", "d2"}, RMatrix(2, 2, {rf("t1"), rf("t2"), rf("t1"), rf("t2")})};
  CHECK_THROWS_AS(rebase_derivations(s, singular), SingularRebase);
  CHECK_THROWS_AS(singular.inverse(), SingularRebase);
}

TEST_CASE("rebase round trip on random systems") {
  std::mt19937 rng(61);
  auto f = Tower::rational({"x"}, {"t1", "t2"});
  std::vector<Var> vars{var("t1"), var("t2")};
  for (int i = 0; i < 5; ++i) {
    ConnectionSystem s(f, 2);
    for (const char* sym : {"x", "t1", "t2"}) {
      RMatrix m(2, 2);
      for (std::size_t k = 0; k < 4; ++k) m(k / 2, k % 2) = testing::random_rf(rng, vars, 1);
      s.set(sym, m);
    }
    RMatrix l(2, 2);
    for (std::size_t k = 0; k < 4; ++k) l(k / 2, k % 2) = RationalFunction(testing::random_poly(rng, vars, 1, 2));
    if (!inverse(l)) continue;
    DerivationRebase r{{"t1", "t2"}, {"e1_" + std::to_string(i), "e2_" + std::to_string(i)}, l};
    CHECK(rebase_derivations(rebase_derivations(s, r), r.inverse()) == s);
  }
}

TEST_CASE("per-derivation horizontal sections") {
  auto f = Tower::rational({}, {"t1", "t2"});
  ConnectionSystem s(f, 1);
  s.set("t1", RMatrix(1, 1));
  s.set("t2", RMatrix::identity(1));
  DerivationRebase r{{"t1", "t2"}, {"d1", "d2"}, RMatrix(2, 2, {rf("t1"), RationalFunction(), rf("t1"), RationalFunction(1)})};
  auto rb = rebase_derivations(s, r);

  auto h1 = horizontal_sections(rb, {"d1"}, 6);
  REQUIRE_FALSE(h1.basis.empty());
  CHECK(h1.basis.size() == 7);  // polynomials in t2 of degree <= 6
  bool has_one = false;
  for (const auto& y : h1.basis) has_one |= y[0] == RationalFunction(1);
  CHECK(has_one);

  auto h2 = horizontal_sections(rb, {"d2"}, 6);
  REQUIRE(h2.basis.size() == 1);
  CHECK((h2.basis[0][0] / rf("t1")).is_constant());

  CHECK(horizontal_sections(rb, {"d1", "d2"}, 6).basis.empty());
}
