#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "isomono/derham.hpp"
#include "isomono/matrix.hpp"
#include "isomono/tower.hpp"

namespace isomono {

/// One square matrix per derivation symbol, over a tower field. Solutions
/// satisfy d Y = A_d Y.
class ConnectionSystem {
 public:
  ConnectionSystem(std::shared_ptr<const Tower> field, std::size_t n);

  std::size_t size() const noexcept { return n_; }
  const Tower& field() const noexcept { return *field_; }
  const std::shared_ptr<const Tower>& field_ptr() const noexcept { return field_; }

  void set(const std::string& symbol, RMatrix m);
  bool has(const std::string& symbol) const { return mats_.count(symbol) > 0; }
  /// Throws UnknownDerivation when the system has no matrix for symbol.
  const RMatrix& matrix(const std::string& symbol) const;
  /// Symbols carrying a matrix, in the tower's declaration order.
  std::vector<std::string> symbols() const;
  /// The field's principal symbol when this system carries it.
  std::optional<std::string> principal() const;

  /// Entrywise derivation.
  RMatrix derive(const RMatrix& m, const std::string& symbol, Exec exec = default_exec()) const;

  friend bool operator==(const ConnectionSystem& a, const ConnectionSystem& b) {
    return a.n_ == b.n_ && a.mats_ == b.mats_;
  }

 private:
  std::shared_ptr<const Tower> field_;
  std::size_t n_;
  std::map<std::string, RMatrix> mats_;
};

/// d_u A_v - d_v A_u - [A_u, A_v].
RMatrix defect(const ConnectionSystem& s, const std::string& u, const std::string& v);

enum class CheckMode { pairwise, full };

struct PairVerdict {
  std::string u, v;  // defect(u, v); u is the later symbol in declaration order
  bool flat;
  RMatrix defect;
};

struct IntegrabilityReport {
  CheckMode mode;
  std::vector<PairVerdict> pairs;
  bool integrable() const;
  const PairVerdict* find(const std::string& a, const std::string& b) const;
};

/// pairwise: every symbol against the principal one; full: all pairs.
IntegrabilityReport check_integrability(const ConnectionSystem& s, CheckMode mode, Exec exec = default_exec());

/// A -> g A g^-1 + (d g) g^-1 for every symbol.
ConnectionSystem gauge(const ConnectionSystem& s, const RMatrix& g);

/// Basis of {X : X M = M X for all M}.
std::vector<RMatrix> centralizer(const std::vector<RMatrix>& mats, Exec exec = default_exec());

/// sum over cyclic (u, v, w) of d_u h_vw - [A_u, h_vw] with h = defect.
RMatrix bianchi_sum(const ConnectionSystem& s, const std::string& u, const std::string& v, const std::string& w);

/// The 1-form a of an equivalence move, one matrix per symbol (absent = 0).
using EquivalenceMove = std::map<std::string, RMatrix>;

/// A_d -> A_d + a_d.
ConnectionSystem equivalence_move(const ConnectionSystem& s, const EquivalenceMove& a);

/// h_uv + d_u a_v - d_v a_u - [A_u, a_v] - [a_u, A_v] - [a_u, a_v].
RMatrix moved_defect(const ConnectionSystem& s, const EquivalenceMove& a, const std::string& u, const std::string& v);

struct FlattenBounds {
  unsigned degree = 4;
};

struct FlattenResult {
  enum class Status { found, proven_obstruction, not_found };
  Status status = Status::not_found;
  EquivalenceMove moves;
  std::optional<ConnectionSystem> flat;
  // Obstruction witness.
  std::string u, v;                  // pair whose defect cannot be removed
  std::optional<RMatrix> direction;  // constraint matrix (empty: outside the span)
  RationalFunction coefficient;      // component of defect(v, u) along it
  std::optional<Exact2FormResult> exactness;
  std::string explanation;
};

/// Searches for an equivalence move on the parametric symbols making the
/// system flat; constraint restricts the move to a span of matrices.
FlattenResult flatten(const ConnectionSystem& s, const std::vector<std::string>& order,
                      const std::optional<std::vector<RMatrix>>& constraint = std::nullopt, FlattenBounds bounds = {},
                      Exec exec = default_exec());

}  // namespace isomono
