#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "isomono/connection.hpp"
#include "isomono/curve.hpp"
#include "isomono/operator.hpp"
#include "isomono/tower.hpp"

namespace isomono {

/// Basis over Q of the rational solutions of D u = 0, D over Q(param).
/// Throws Unsupported when a coefficient leaves Q(param) or the leading
/// coefficient has non-rational roots.
std::vector<RationalFunction> rational_solutions(const LinearDiffOperator& op);

/// (n+1)x(n+1) system with A_x = first column (0, b, d_t b, ...) and A_t =
/// shift rows over the bottom row (a, c_0, ..., c_{n-1}). Flat iff D(b) = d_x(a).
ConnectionSystem companion_system(const LinearDiffOperator& op, const TowerElement& b, const TowerElement& a,
                                  std::shared_ptr<const Tower> field);

struct GaloisDescriptor {
  enum class Verdict { constant, nonconstant_over_k };
  LinearDiffOperator op;
  Verdict verdict = Verdict::nonconstant_over_k;
  std::vector<RationalFunction> solutions;
  std::string source;  // rational, tower or curve
  // Tower identities come without a minimality proof.
  bool minimality_certified = false;
};

const char* to_string(GaloisDescriptor::Verdict v);

/// Verdict for a given operator: constant iff the rational solution space
/// has full dimension.
GaloisDescriptor galois_descriptor(const LinearDiffOperator& op, std::string source, bool minimal);

/// Integrand in Q(x, t) through the telescoper; nullopt beyond max_order.
std::optional<GaloisDescriptor> galois_descriptor_rational(const RationalFunction& b, Var x, Var t,
                                                           std::size_t max_order = 8,
                                                           Exec exec = default_exec());

/// Basis form on a curve through the Picard-Fuchs operator.
std::optional<GaloisDescriptor> galois_descriptor_curve(const CurveSpec& c, std::size_t form,
                                                        std::size_t max_order = 4, Exec exec = default_exec());

/// User-supplied identity D(b) = d_x(a) in a tower; throws PreconditionFailed
/// when it does not hold.
GaloisDescriptor galois_descriptor_tower(const Tower& field, const TowerElement& b, const LinearDiffOperator& op,
                                         const TowerElement& a);

/// to[i] = sum_j lambda(i, j) from[j].
struct DerivationRebase {
  std::vector<std::string> from;
  std::vector<std::string> to;
  RMatrix lambda;

  /// The rebase mapping `to` back onto `from`; throws SingularRebase.
  DerivationRebase inverse() const;
};

/// Throws SingularRebase when lambda is not invertible and UnknownDerivation
/// for symbols missing from the system.
ConnectionSystem rebase_derivations(const ConnectionSystem& s, const DerivationRebase& r);

struct HorizontalSections {
  std::vector<std::vector<RationalFunction>> basis;  // columns Y with d Y = A_d Y
  unsigned degree_bound = 0;
};

/// Common rational solutions for the chosen symbols by a polynomial ansatz
/// over the coordinates, numerator degree <= degree_bound above the
/// coefficient denominators. Every returned vector is verified.
HorizontalSections horizontal_sections(const ConnectionSystem& s, const std::vector<std::string>& symbols,
                                       unsigned degree_bound, Exec exec = default_exec());

}  // namespace isomono
