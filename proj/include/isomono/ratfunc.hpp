#pragma once

#include <compare>
#include <string>

#include "isomono/multipoly.hpp"

namespace isomono {

/// Reduced quotient of multivariate polynomials over Q.
///
/// Canonical form: gcd(num, den) = 1 and den is monic under the graded-lex
/// order, so two values are equal iff their representations are.
class RationalFunction {
 public:
  RationalFunction() : den_(Q(1)) {}
  RationalFunction(const Q& c) : num_(c), den_(Q(1)) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(long c) : RationalFunction(Q(c)) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(const MultiPoly& p) : num_(p), den_(Q(1)) {}  // NOLINT(google-explicit-constructor)
  /// Throws ZeroDenominator when den is zero.
  RationalFunction(const MultiPoly& num, const MultiPoly& den);

  static RationalFunction variable(Var v) { return {MultiPoly::variable(v)}; }

  const MultiPoly& num() const noexcept { return num_; }
  const MultiPoly& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const noexcept { return den_.is_constant(); }
  Q constant_value() const { return num_.constant_value(); }
  bool contains(Var v) const { return num_.contains(v) || den_.contains(v); }
  std::vector<Var> variables() const;

  RationalFunction derivative(Var v) const;
  RationalFunction substitute(Var v, const RationalFunction& value) const;
  RationalFunction inverse() const;

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;
  friend std::strong_ordering operator<=>(const RationalFunction& a, const RationalFunction& b);

  /// Plain "num/den" text in the expression grammar.
  std::string to_string() const;

 private:
  struct Raw {};
  RationalFunction(Raw, MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {}
  static RationalFunction make_reduced(MultiPoly num, MultiPoly den);

  MultiPoly num_;
  MultiPoly den_;
};

RationalFunction pow(const RationalFunction& f, int e);

/// normalize(num, den): canonical reduced form of num/den.
RationalFunction normalize(const MultiPoly& num, const MultiPoly& den);

}  // namespace isomono
