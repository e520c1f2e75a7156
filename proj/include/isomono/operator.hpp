#pragma once

#include <functional>
#include <string>
#include <vector>

#include "isomono/ratfunc.hpp"

namespace isomono {

/// Monic operator D = d^n - sum_{i<n} c_i d^i in one parameter derivation.
struct LinearDiffOperator {
  Var param;
  std::vector<RationalFunction> c;  // c_0 .. c_{n-1}

  std::size_t order() const noexcept { return c.size(); }

  /// Coefficient of d^i in D (1 for i = n, -c_i below).
  RationalFunction coefficient(std::size_t i) const;

  /// D(f) with d acting through `derive`; defaults to the partial in param.
  RationalFunction apply(const RationalFunction& f,
                         const std::function<RationalFunction(const RationalFunction&)>& derive) const;
  RationalFunction apply(const RationalFunction& f) const;

  /// Text such as "Dt^2 + ((2*t-1)/(t*(t-1)))*Dt + 1/(4*t*(t-1))".
  std::string to_string() const;

  friend bool operator==(const LinearDiffOperator&, const LinearDiffOperator&) = default;
};

/// Text of sum_i coeffs[i] d^i in the same style as LinearDiffOperator.
std::string format_operator(Var param, const std::vector<RationalFunction>& coeffs);

/// Builds D from the coefficients e_j of sum_{j<=n} e_j d^j with e_n = 1.
LinearDiffOperator operator_from_dependence(Var param, const std::vector<RationalFunction>& e);

}  // namespace isomono
