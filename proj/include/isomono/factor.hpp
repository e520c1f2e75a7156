#pragma once

#include <utility>
#include <vector>

#include "isomono/ratfunc.hpp"
#include "isomono/upoly.hpp"

namespace isomono {

struct SquarefreeFactor {
  MultiPoly factor;  // primitive in v, monic in grlex
  unsigned multiplicity;
};

/// Squarefree decomposition of p as a polynomial in v over the fraction
/// field of the other variables (Yun). The v-free content is a unit there
/// and is dropped, so the product equals p up to such a unit.
std::vector<SquarefreeFactor> squarefree_factor(const MultiPoly& p, Var v);

/// Distinct rational roots of a squarefree univariate polynomial with
/// rational coefficients (index i = coefficient of y^i), in increasing order.
std::vector<Q> rational_roots(const std::vector<Q>& coeffs);

/// Roots in the fraction field of the other variables of a polynomial that
/// is squarefree in v. Throws NonLinearFactor unless p splits into linear
/// factors in v.
std::vector<RationalFunction> linear_roots(const MultiPoly& p, Var v);

struct PoleTerm {
  RationalFunction pole;
  unsigned order;
  RationalFunction coefficient;
  friend bool operator==(const PoleTerm&, const PoleTerm&) = default;
};

/// f = polynomial + sum coefficient / (v - pole)^order.
struct PartialFractions {
  Var var;
  UPoly polynomial;
  std::vector<PoleTerm> terms;  // sorted by pole, then order

  RationalFunction recombine() const;
};

PartialFractions partial_fractions(const RationalFunction& f, Var v);

/// First coefficients of the power series a/b at var = 0 (b(0) != 0).
std::vector<RationalFunction> series_quotient(const UPoly& a, const UPoly& b, std::size_t terms);

}  // namespace isomono
