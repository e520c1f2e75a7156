#pragma once

#include <random>
#include <string>
#include <vector>

#include "isomono/expr.hpp"
#include "isomono/ratfunc.hpp"

namespace isomono::testing {

/// Parses an expression, registering unknown names (x as principal).
inline RationalFunction rf(const std::string& text) {
  return expr::parse_rf(text, [](const std::string& name) {
    return RationalFunction::variable(var(name, name == "x" ? VarKind::principal : VarKind::parametric));
  });
}

inline MultiPoly random_poly(std::mt19937& rng, const std::vector<Var>& vars, unsigned degree, int terms = 3) {
  std::uniform_int_distribution<int> coeff(-3, 3), pick(0, static_cast<int>(vars.size()) - 1),
      exp(0, static_cast<int>(degree));
  std::vector<MultiPoly::Term> out;
  for (int k = 0; k < terms; ++k) {
    Monomial m;
    unsigned budget = degree;
    for (unsigned j = 0; j < degree && budget > 0; ++j) {
      unsigned e = std::min<unsigned>(budget, exp(rng) > 0 ? 1 : 0);
      if (e == 0) continue;
      Var v = vars[pick(rng)];
      m = m * Monomial::of(v, e);
      budget -= e;
    }
    out.push_back({m, Q(coeff(rng))});
  }
  return MultiPoly::from_terms(std::move(out));
}

/// Random rational function with a nonzero denominator.
inline RationalFunction random_rf(std::mt19937& rng, const std::vector<Var>& vars, unsigned degree) {
  MultiPoly num = random_poly(rng, vars, degree);
  MultiPoly den;
  do den = random_poly(rng, vars, degree, 2) + MultiPoly(1);
  while (den.is_zero());
  return RationalFunction(num, den);
}

}  // namespace isomono::testing

#include "isomono/matrix.hpp"
#include "isomono/tower.hpp"

namespace isomono::testing {

inline RMatrix matrix(const Tower& field, const std::vector<std::vector<std::string>>& rows) {
  RMatrix m(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = field.parse(rows[i][j]);
  return m;
}

/// Q(t, x, log x, x^(t-1) e^(-x)) with an antiderivative gamma of h in x.
inline std::shared_ptr<Tower> gamma_tower() {
  auto t = std::make_shared<Tower>();
  t->add_coordinate("x", VarKind::principal);
  t->add_coordinate("t", VarKind::parametric);
  t->add_generator("l", GeneratorKind::defined);
  t->add_generator("h", GeneratorKind::defined);
  t->add_generator("gamma", GeneratorKind::free);
  t->set_rule("l", "x", t->parse("1/x"));
  t->set_rule("l", "t", t->parse("0"));
  t->set_rule("h", "x", t->parse("((t-1)/x - 1)*h"));
  t->set_rule("h", "t", t->parse("l*h"));
  t->set_rule("gamma", "x", t->parse("h"));
  return t;
}

/// Free I1, I2 with J1, J2 and the iterated integral I over Q(t1, t2).
inline std::shared_ptr<Tower> iterated_tower() {
  auto t = std::make_shared<Tower>();
  t->add_coordinate("x", VarKind::principal);
  t->add_coordinate("t1", VarKind::parametric);
  t->add_coordinate("t2", VarKind::parametric);
  t->add_generator("I1", GeneratorKind::free);
  t->add_generator("I2", GeneratorKind::free);
  t->add_generator("J1", GeneratorKind::free);
  t->add_generator("J2", GeneratorKind::free);
  t->add_generator("I", GeneratorKind::defined);
  t->set_rule("J1", "x", t->parse("I1__x*I2__t1 - I1__t1*I2__x - I2__x/t1"));
  t->set_rule("J2", "x", t->parse("I1__x*I2__t2 - I1__t2*I2__x + I1__x/t2"));
  t->set_rule("J2", "t1", t->parse("J1__t2 - I1__t2*I2__t1 + I1__t1*I2__t2 + I1__t1/t2 + I2__t2/t1"));
  t->set_rule("I", "x", t->parse("I1__x*I2"));
  t->set_rule("I", "t1", t->parse("J1 + I1__t1*I2 + I2/t1"));
  t->set_rule("I", "t2", t->parse("J2 + I1__t2*I2 - I1/t2"));
  return t;
}

}  // namespace isomono::testing
