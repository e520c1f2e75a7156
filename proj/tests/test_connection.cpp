#include <random>

#include "doctest.h"
#include "isomono/connection.hpp"
#include "isomono/errors.hpp"
#include "isomono/linsolve.hpp"
#include "test_support.hpp"

using namespace isomono;
using testing::matrix;

namespace {

std::shared_ptr<Tower> t12() { return Tower::rational({}, {"t1", "t2"}); }

ConnectionSystem heisenberg(bool with_x = false) {
  auto f = with_x ? Tower::rational({"x"}, {"t1", "t2"}) : t12();
  ConnectionSystem s(f, 3);
  s.set("t1", matrix(*f, {{"0", "1/t1", "0"}, {"0", "0", "0"}, {"0", "0", "0"}}));
  s.set("t2", matrix(*f, {{"0", "0", "0"}, {"0", "0", "1/t2"}, {"0", "0", "0"}}));
  if (with_x) s.set("x", RMatrix(3, 3));
  return s;
}

RMatrix random_matrix(std::mt19937& rng, const std::vector<Var>& vars, std::size_t n, bool poly = false) {
  RMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = poly ? RationalFunction(testing::random_poly(rng, vars, 1, 2)) : testing::random_rf(rng, vars, 1);
  return m;
}

ConnectionSystem random_system(std::mt19937& rng, std::shared_ptr<Tower> f, std::size_t n, bool poly = false) {
  ConnectionSystem s(f, n);
  std::vector<Var> vars;
  for (const auto& c : f->coordinate_names()) vars.push_back(var(c));
  for (const auto& sym : f->symbol_names()) s.set(sym, random_matrix(rng, vars, n, poly));
  return s;
}

}  // namespace

TEST_CASE("Heisenberg defect") {
  auto s = heisenberg();
  auto d = defect(s, "t2", "t1");
  CHECK(d == RationalFunction(testing::rf("1/(t1*t2)")) * RMatrix::unit(3, 0, 2));
  CHECK(defect(s, "t1", "t2") == -d);
  ConnectionSystem zero(t12(), 2);
  zero.set("t1", RMatrix(2, 2));
  zero.set("t2", RMatrix(2, 2));
  CHECK(defect(zero, "t1", "t2").is_zero());
  CHECK_THROWS_AS(defect(s, "t1", "t3"), UnknownDerivation);
}

TEST_CASE("defect antisymmetry on random systems") {
  std::mt19937 rng(19);
  auto f = Tower::rational({"x"}, {"t1"});
  for (int i = 0; i < 5; ++i) {
    auto s = random_system(rng, f, 3);
    CHECK(defect(s, "x", "t1") + defect(s, "t1", "x") == RMatrix(3, 3));
  }
}

TEST_CASE("commutant of the unitriangular generators") {
  auto f = t12();
  auto id = RMatrix::identity(3);
  std::vector<RMatrix> gens{id + RMatrix::unit(3, 0, 1), id + RMatrix::unit(3, 1, 2), id + RMatrix::unit(3, 0, 2)};
  auto c = centralizer(gens);
  REQUIRE(c.size() == 2);
  CHECK(c[0] == id);
  CHECK(c[1] == RMatrix::unit(3, 0, 2));
  CHECK(centralizer({id}).size() == 9);
  RMatrix diag(3, 3);
  diag(0, 0) = 1;
  diag(1, 1) = 2;
  diag(2, 2) = 3;
  auto dc = centralizer({diag});
  REQUIRE(dc.size() == 3);
  for (const auto& m : dc) {
    CHECK(m * diag == diag * m);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        if (i != j) CHECK(m(i, j).is_zero());
  }
}

TEST_CASE("integrability checks") {
  auto s = heisenberg(true);
  auto pw = check_integrability(s, CheckMode::pairwise);
  CHECK(pw.integrable());
  CHECK(pw.pairs.size() == 2);
  auto full = check_integrability(s, CheckMode::full);
  CHECK_FALSE(full.integrable());
  const auto* p = full.find("t1", "t2");
  REQUIRE(p != nullptr);
  CHECK(p->u == "t2");
  CHECK(p->defect == RationalFunction(testing::rf("1/(t1*t2)")) * RMatrix::unit(3, 0, 2));
  CHECK_THROWS_AS(check_integrability(heisenberg(false), CheckMode::pairwise), PreconditionFailed);

  ConnectionSystem zero(Tower::rational({"x"}, {"t1"}), 2);
  zero.set("x", RMatrix(2, 2));
  zero.set("t1", RMatrix(2, 2));
  CHECK(check_integrability(zero, CheckMode::full).integrable());
}

TEST_CASE("gauge covariance and cocycle") {
  std::mt19937 rng(23);
  auto f = Tower::rational({"x"}, {"t1"});
  std::vector<Var> vars{var("x"), var("t1")};
  for (int i = 0; i < 8; ++i) {
    auto s = random_system(rng, f, 2);
    RMatrix g = random_matrix(rng, vars, 2, true);
    RMatrix h = random_matrix(rng, vars, 2, true);
    if (!inverse(g) || !inverse(h)) continue;
    auto gs = gauge(s, g);
    auto gi = *inverse(g);
    CHECK(defect(gs, "t1", "x") == g * defect(s, "t1", "x") * gi);
    if (i < 3) CHECK(gauge(gs, h) == gauge(s, h * g));
  }
  auto s = heisenberg();
  CHECK(gauge(s, RMatrix::identity(3)) == s);
  CHECK_THROWS_AS(gauge(s, RMatrix(3, 3)), SingularGauge);
}

TEST_CASE("Bianchi identity") {
  std::mt19937 rng(29);
  auto f = Tower::rational({"x"}, {"t1", "t2"});
  for (int i = 0; i < 3; ++i) CHECK(bianchi_sum(random_system(rng, f, 2, true), "x", "t1", "t2").is_zero());
  CHECK(bianchi_sum(heisenberg(true), "x", "t1", "t2").is_zero());
  ConnectionSystem zero(f, 2);
  for (const char* s : {"x", "t1", "t2"}) zero.set(s, RMatrix(2, 2));
  CHECK(bianchi_sum(zero, "x", "t1", "t2").is_zero());
}

TEST_CASE("Bianchi identity over several sizes and fields") {
  auto exp_log = std::make_shared<Tower>();
  exp_log->add_coordinate("x", VarKind::principal);
  exp_log->add_coordinate("t1", VarKind::parametric);
  exp_log->add_coordinate("t2", VarKind::parametric);
  exp_log->add_generator("l", GeneratorKind::defined);
  exp_log->add_generator("e", GeneratorKind::defined);
  exp_log->set_rule("l", "x", exp_log->parse("1/x"));
  exp_log->set_rule("l", "t1", exp_log->parse("0"));
  exp_log->set_rule("l", "t2", exp_log->parse("0"));
  exp_log->set_rule("e", "x", exp_log->parse("t1*e"));
  exp_log->set_rule("e", "t1", exp_log->parse("x*e"));
  exp_log->set_rule("e", "t2", exp_log->parse("0"));

  const std::vector<std::pair<std::shared_ptr<Tower>, std::vector<std::string>>> fields{
      {Tower::rational({"x"}, {"t1", "t2"}), {"x", "t1", "t2"}},
      {exp_log, {"x", "t1", "l", "e"}},
      {testing::iterated_tower(), {"x", "t2", "I1", "J1", "I"}},
  };
  const char* dens[] = {"(x+3)", "t1", "(t2-1)"};
  std::mt19937 rng(37);
  std::uniform_int_distribution<int> coeff(-2, 2), pick(0, 4);
  for (const auto& [field, atoms] : fields) {
    auto entry = [&, &atoms = atoms, &field = field] {
      std::string text = std::to_string(coeff(rng));
      for (int k = 0; k < 2; ++k)
        text += " + (" + std::to_string(coeff(rng)) + ")*" + atoms[pick(rng) % atoms.size()] + "/" +
                dens[pick(rng) % 3];
      return field->parse(text);
    };
    for (std::size_t n = 1; n <= 3; ++n) {
      ConnectionSystem s(field, n);
      for (const auto& sym : field->symbol_names()) {
        RMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) m(i, j) = entry();
        s.set(sym, m);
      }
      INFO("size " << n);
      CHECK(bianchi_sum(s, "x", "t1", "t2").is_zero());
    }
  }
}

TEST_CASE("equivalence moves") {
  auto f = t12();
  ConnectionSystem s(f, 1);
  s.set("t1", matrix(*f, {{"t2"}}));
  s.set("t2", matrix(*f, {{"0"}}));
  CHECK(equivalence_move(s, {}) == s);
  EquivalenceMove a{{"t2", matrix(*f, {{"t1"}})}};
  auto moved = equivalence_move(s, a);
  CHECK(defect(moved, "t2", "t1").is_zero());
  CHECK(moved_defect(s, a, "t2", "t1").is_zero());

  std::mt19937 rng(31);
  std::vector<Var> vars{var("t1"), var("t2")};
  for (int i = 0; i < 5; ++i) {
    auto r = random_system(rng, f, 2);
    EquivalenceMove m{{"t1", random_matrix(rng, vars, 2)}, {"t2", random_matrix(rng, vars, 2)}};
    CHECK(moved_defect(r, m, "t1", "t2") == defect(equivalence_move(r, m), "t1", "t2"));
  }
}

TEST_CASE("flatten outcomes") {
  auto s = heisenberg();
  std::vector<RMatrix> commutant{RMatrix::identity(3), RMatrix::unit(3, 0, 2)};
  auto r = flatten(s, {"t1", "t2"}, commutant);
  REQUIRE(r.status == FlattenResult::Status::proven_obstruction);
  REQUIRE(r.exactness);
  CHECK(r.exactness->residue == testing::rf("1/t2"));
  CHECK(r.exactness->pole.is_zero());
  CHECK(r.coefficient == testing::rf("1/(t1*t2)"));

  auto f = t12();
  ConnectionSystem scalar(f, 1);
  scalar.set("t1", matrix(*f, {{"t2"}}));
  scalar.set("t2", matrix(*f, {{"0"}}));
  auto sr = flatten(scalar, {"t1", "t2"});
  REQUIRE(sr.status == FlattenResult::Status::found);
  CHECK(sr.moves.at("t2") == matrix(*f, {{"t1"}}));
  CHECK(check_integrability(*sr.flat, CheckMode::full).integrable());

  ConnectionSystem flat(f, 2);
  flat.set("t1", RMatrix(2, 2));
  flat.set("t2", RMatrix(2, 2));
  auto fr = flatten(flat, {"t1", "t2"});
  CHECK(fr.status == FlattenResult::Status::found);
  CHECK(fr.moves.empty());
}

TEST_CASE("flatten ansatz path") {
  // Unconstrained 2x2 system over Q(x, t1, t2) with a curvature that a
  // polynomial move removes.
  auto f = Tower::rational({"x"}, {"t1", "t2"});
  ConnectionSystem s(f, 2);
  s.set("x", matrix(*f, {{"0", "0"}, {"0", "0"}}));
  s.set("t1", matrix(*f, {{"0", "t2"}, {"0", "0"}}));
  s.set("t2", matrix(*f, {{"t1", "0"}, {"0", "0"}}));
  auto r = flatten(s, {"t1", "t2"});
  REQUIRE(r.status == FlattenResult::Status::found);
  CHECK(check_integrability(*r.flat, CheckMode::full).integrable());
  CHECK(r.moves.count("t1") == 0);
}

TEST_CASE("iterated integrals: pairwise flat, full obstruction") {
  auto f = testing::iterated_tower();
  ConnectionSystem s(f, 3);
  s.set("x", matrix(*f, {{"0", "I1__x", "0"}, {"0", "0", "I2__x"}, {"0", "0", "0"}}));
  s.set("t1", matrix(*f, {{"0", "1/t1 + I1__t1", "J1"}, {"0", "0", "I2__t1"}, {"0", "0", "0"}}));
  s.set("t2", matrix(*f, {{"0", "I1__t2", "J2"}, {"0", "0", "1/t2 + I2__t2"}, {"0", "0", "0"}}));
  CHECK(check_integrability(s, CheckMode::pairwise).integrable());
  auto full = check_integrability(s, CheckMode::full);
  CHECK_FALSE(full.integrable());
  CHECK(defect(s, "t2", "t1") == matrix(*f, {{"0", "0", "1/(t1*t2)"}, {"0", "0", "0"}, {"0", "0", "0"}}));

  ConnectionSystem tilde(f, 3);
  tilde.set("x", RMatrix(3, 3));
  tilde.set("t1", matrix(*f, {{"0", "1/t1", "0"}, {"0", "0", "0"}, {"0", "0", "0"}}));
  tilde.set("t2", matrix(*f, {{"0", "0", "0"}, {"0", "0", "1/t2"}, {"0", "0", "0"}}));
  auto phi = matrix(*f, {{"1", "I1", "I"}, {"0", "1", "I2"}, {"0", "0", "1"}});
  CHECK(gauge(tilde, phi) == s);
}

TEST_CASE("replacing a matrix by a scalar shift breaks one pair") {
  auto f = Tower::rational({}, {"t1", "t2", "t3"});
  ConnectionSystem zero(f, 2);
  for (const char* t : {"t1", "t2", "t3"}) zero.set(t, RMatrix(2, 2));
  auto g = matrix(*f, {{"1", "t1/(t3+1)"}, {"t2", "t1*t2 - 1"}});
  auto s = gauge(zero, g);
  CHECK(check_integrability(s, CheckMode::full).integrable());
  s.set("t3", s.matrix("t3") + RationalFunction(testing::rf("t1")) * RMatrix::identity(2));
  CHECK(defect(s, "t1", "t3") == RMatrix::identity(2));
  auto rep = check_integrability(s, CheckMode::full);
  const auto* p = rep.find("t1", "t3");
  REQUIRE(p != nullptr);
  CHECK(p->defect == -RMatrix::identity(2));
  CHECK(rep.find("t1", "t2")->flat);
  CHECK(rep.find("t2", "t3")->flat);
}
