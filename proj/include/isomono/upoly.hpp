#pragma once

#include <utility>
#include <vector>

#include "isomono/ratfunc.hpp"

namespace isomono {

/// Dense univariate polynomial in a distinguished variable with coefficients
/// in the rational-function field of the remaining variables.
class UPoly {
 public:
  explicit UPoly(Var v) : var_(v) {}
  UPoly(Var v, std::vector<RationalFunction> coeffs);
  static UPoly from(const MultiPoly& p, Var v);
  static UPoly constant(Var v, const RationalFunction& c) { return UPoly(v, {c}); }
  static UPoly x(Var v) { return UPoly(v, {RationalFunction(0), RationalFunction(1)}); }
  /// x - c
  static UPoly linear(Var v, const RationalFunction& c) { return UPoly(v, {-c, RationalFunction(1)}); }

  Var var() const noexcept { return var_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<RationalFunction>& coeffs() const noexcept { return c_; }
  const RationalFunction& coeff(std::size_t i) const;
  const RationalFunction& lc() const { return c_.back(); }

  RationalFunction to_rf() const;
  /// Polynomial with cleared denominators, primitive and monic in grlex.
  MultiPoly to_primitive_multipoly() const;

  UPoly derivative() const;
  /// Formal antiderivative with zero constant term.
  UPoly integral() const;
  RationalFunction evaluate(const RationalFunction& at) const;
  /// p(at + var)
  UPoly shift(const RationalFunction& at) const;
  UPoly monic() const;

  UPoly operator-() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const RationalFunction& s, const UPoly& a);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  Var var_;
  std::vector<RationalFunction> c_;
};

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly operator%(const UPoly& a, const UPoly& b);
UPoly pow(const UPoly& p, unsigned e);
/// Monic gcd.
UPoly gcd(const UPoly& a, const UPoly& b);

/// Solves s*a + t*b = c with deg s < deg b; requires gcd(a, b) | c.
std::pair<UPoly, UPoly> solve_bezout(const UPoly& a, const UPoly& b, const UPoly& c);

/// Splits a rational function in v into numerator and monic denominator.
std::pair<UPoly, UPoly> as_fraction(const RationalFunction& f, Var v);

}  // namespace isomono
