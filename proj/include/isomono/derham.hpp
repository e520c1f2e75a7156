#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isomono/operator.hpp"
#include "isomono/parallel.hpp"
#include "isomono/ratfunc.hpp"

namespace isomono {

/// Canonical class sum_i b_i / (x - c_i) in K / d_x K, keyed by pole.
struct H1Class {
  Var var;
  std::map<RationalFunction, RationalFunction> residues;  // pole -> nonzero residue

  bool empty() const noexcept { return residues.empty(); }
  RationalFunction representative() const;
  std::string to_string() const;
  friend bool operator==(const H1Class&, const H1Class&) = default;
};

struct ReductionResult {
  H1Class cls;
  RationalFunction certificate;  // f = d_x(certificate) + representative
};

/// Hermite reduction plus simple-pole residues. Throws NonLinearFactor when
/// the squarefree part of the denominator does not split over the
/// coefficients.
ReductionResult reduce(const RationalFunction& f, Var x);

/// Gauss-Manin action of d/dt on a class: residues are differentiated, the
/// pole-motion part is exact.
H1Class gm_derivative(const H1Class& c, Var t);

struct TelescoperResult {
  LinearDiffOperator op;
  RationalFunction certificate;  // D(b) = d_x(certificate)
  std::vector<H1Class> classes;  // class of d_t^j b, j = 0..order
};

/// Least-order monic D in d_t with D(b) = d_x(a); nullopt when none exists up
/// to max_order. Re-verifies the identity before returning.
std::optional<TelescoperResult> telescoper(const RationalFunction& b, Var x, Var t, std::size_t max_order = 8,
                                           Exec exec = default_exec());

/// Brute-force oracle: is there a dependence sum_{j<=m} e_j [d_t^j b] = 0
/// with e_m = 1?
bool dependence_exists(const std::vector<H1Class>& classes, std::size_t m);

struct Exact2FormResult {
  enum class Status { solvable, unsolvable, unsupported };
  Status status = Status::unsupported;
  RationalFunction f1, f2;  // d_v f1 - d_u f2 = g when solvable
  // Unsolvable: the residue at u = pole has a nonzero class in v.
  RationalFunction pole, residue;
  std::optional<H1Class> residue_class;
  std::string message;
};

/// Decides whether d_v f1 - d_u f2 = g has rational solutions.
Exact2FormResult exact2form_solvable(const RationalFunction& g, Var u, Var v);

}  // namespace isomono
