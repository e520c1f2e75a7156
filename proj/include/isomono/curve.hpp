#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isomono/operator.hpp"
#include "isomono/parallel.hpp"
#include "isomono/ratfunc.hpp"

namespace isomono {

/// Hyperelliptic curve z^2 = f(x) over Q(t), deg_x f in {3, 4}.
struct CurveSpec {
  MultiPoly f;
  Var x;
  Var t;

  /// Validates degree and squarefreeness in x; throws Unsupported otherwise.
  static CurveSpec make(const MultiPoly& f, Var x, Var t);
  unsigned degree() const { return f.degree(x); }
  /// Number of basis forms x^i dx/z, i.e. degree - 1.
  std::size_t basis_size() const { return degree() - 1; }
};

/// even + odd * z with z^2 already eliminated.
struct CurveElement {
  RationalFunction even, odd;

  static CurveElement z() { return {RationalFunction(), RationalFunction(1)}; }
  bool is_zero() const { return even.is_zero() && odd.is_zero(); }

  CurveElement operator-() const { return {-even, -odd}; }
  friend CurveElement operator+(const CurveElement& a, const CurveElement& b) {
    return {a.even + b.even, a.odd + b.odd};
  }
  friend CurveElement operator-(const CurveElement& a, const CurveElement& b) {
    return {a.even - b.even, a.odd - b.odd};
  }
  friend CurveElement operator*(const RationalFunction& s, const CurveElement& a) { return {s * a.even, s * a.odd}; }
  CurveElement& operator+=(const CurveElement& o) { return *this = *this + o; }
  CurveElement& operator-=(const CurveElement& o) { return *this = *this - o; }
  friend bool operator==(const CurveElement&, const CurveElement&) = default;

  /// "even + (odd)*z" in the expression grammar.
  std::string to_string() const;
};

/// Element of the function field from a rational function in x, t and the
/// variable z, eliminating z^2 = f.
CurveElement curve_element(const CurveSpec& c, const RationalFunction& e, Var z);

CurveElement multiply(const CurveSpec& c, const CurveElement& a, const CurveElement& b);
/// Throws ZeroDenominator for the zero element.
CurveElement inverse(const CurveSpec& c, const CurveElement& a);

/// Derivation by x or by a parameter, with d z = (d f)/(2 z).
CurveElement curve_derive(const CurveSpec& c, const CurveElement& e, Var v);

/// Coordinates in the basis x^i dx/z, 0 <= i <= degree - 2.
struct CurveClass {
  std::vector<RationalFunction> coords;
  bool is_zero() const;
  friend bool operator==(const CurveClass&, const CurveClass&) = default;
};

struct CurveReduction {
  CurveClass cls;
  CurveElement certificate;  // omega = d_x(certificate) + sum coords_i x^i/z
};

/// The basis form x^i/z.
CurveElement basis_form(const CurveSpec& c, std::size_t i);
CurveElement representative(const CurveSpec& c, const CurveClass& cls);

/// Reduces omega dx. Poles away from f = 0 must reduce to an exact part;
/// residues there, or in the even part, throw UnsupportedPoles.
CurveReduction curve_reduce(const CurveSpec& c, const CurveElement& omega);

struct PicardFuchsResult {
  LinearDiffOperator op;
  CurveElement integrand;
  CurveElement certificate;        // D(integrand) = d_x(certificate)
  std::vector<CurveClass> classes;  // class of d_t^j integrand, j = 0..order
};

/// Least-order monic D in d_t annihilating the class of x^form dx/z;
/// nullopt when none exists up to max_order. The identity is re-verified.
std::optional<PicardFuchsResult> picard_fuchs(const CurveSpec& c, std::size_t form, std::size_t max_order = 4,
                                              Exec exec = default_exec());

/// Brute-force oracle: a dependence among classes[0..m] with unit coefficient on m.
bool curve_dependence_exists(const std::vector<CurveClass>& classes, std::size_t m);

}  // namespace isomono
