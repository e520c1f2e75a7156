#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "isomono/registry.hpp"

namespace isomono {

/// Arbitrary-precision rational number.
using Q = mpq_class;

std::string to_string(const Q& q);

/// Exponent vector indexed by variable id, with trailing zeros trimmed.
class Monomial {
 public:
  Monomial() = default;
  static Monomial of(Var v, std::uint32_t exponent = 1);

  std::uint32_t total_degree() const noexcept { return total_; }
  std::uint32_t exponent(Var v) const noexcept { return v.id < exps_.size() ? exps_[v.id] : 0; }
  std::size_t width() const noexcept { return exps_.size(); }
  bool is_one() const noexcept { return total_ == 0; }

  Monomial operator*(const Monomial& other) const;
  /// True when `other` divides this monomial.
  bool divisible_by(const Monomial& other) const;
  /// Requires divisible_by(other).
  Monomial operator/(const Monomial& other) const;
  Monomial with_exponent(Var v, std::uint32_t e) const;
  static Monomial gcd(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial&, const Monomial&) = default;

  /// Graded lexicographic order; variables registered earlier rank higher.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

  const std::vector<std::uint32_t>& exponents() const noexcept { return exps_; }

 private:
  void trim();
  std::vector<std::uint32_t> exps_;
  std::uint32_t total_ = 0;
};

/// Sparse multivariate polynomial over Q.
///
/// Terms are kept sorted in decreasing graded-lex order without zero
/// coefficients, so structural equality is value equality.
class MultiPoly {
 public:
  struct Term {
    Monomial mono;
    Q coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  MultiPoly() = default;
  MultiPoly(const Q& c);  // NOLINT(google-explicit-constructor)
  MultiPoly(long c) : MultiPoly(Q(c)) {}  // NOLINT(google-explicit-constructor)
  static MultiPoly variable(Var v);
  static MultiPoly term(const Monomial& m, const Q& c);
  /// Builds from unsorted terms; merges duplicates and drops zeros.
  static MultiPoly from_terms(std::vector<Term> terms);

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  Q constant_value() const;
  /// Coefficient of the constant monomial.
  Q constant_term() const;

  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  const Term& leading() const { return terms_.front(); }
  const Q& leading_coeff() const { return terms_.front().coeff; }

  std::uint32_t total_degree() const;
  std::uint32_t degree(Var v) const;
  bool contains(Var v) const;
  std::vector<Var> variables() const;

  MultiPoly derivative(Var v) const;
  /// Coefficients as a polynomial in `v`; index i holds the coefficient of v^i.
  std::vector<MultiPoly> coefficients_in(Var v) const;
  static MultiPoly from_coefficients(Var v, const std::vector<MultiPoly>& coeffs);
  MultiPoly substitute(Var v, const MultiPoly& value) const;
  /// Keeps only the terms of total degree <= max_degree.
  MultiPoly truncate(std::uint32_t max_degree) const;
  MultiPoly homogeneous_part(std::uint32_t degree) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const Q& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Q& c) { return a *= c; }
  friend MultiPoly operator*(const Q& c, MultiPoly a) { return a *= c; }

  MultiPoly monic() const;
  /// Positive rational such that this / content has coprime integer coefficients.
  Q content() const;
  MultiPoly mul_monomial(const Monomial& m, const Q& c) const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }
  /// Total order used for canonical keys (not a ring order).
  friend std::strong_ordering operator<=>(const MultiPoly& a, const MultiPoly& b);

  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

MultiPoly pow(const MultiPoly& p, unsigned e);

/// Exact quotient a / b; throws InexactDivision when b does not divide a.
MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b);
/// Quotient when b divides a, otherwise false.
bool try_divide(const MultiPoly& a, const MultiPoly& b, MultiPoly& quotient);

/// Monic greatest common divisor (zero only when both inputs are zero).
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);
MultiPoly lcm(const MultiPoly& a, const MultiPoly& b);

/// Content of p viewed as a polynomial in v (monic gcd of its coefficients).
MultiPoly content_in(const MultiPoly& p, Var v);

/// Pseudo-remainder of a by b as polynomials in v.
MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, Var v);

}  // namespace isomono
