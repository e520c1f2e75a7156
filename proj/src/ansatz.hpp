#pragma once

// Helpers shared by the bounded-degree ansatz solvers.

#include <algorithm>
#include <vector>

#include "isomono/multipoly.hpp"

namespace isomono::detail {

/// All monomials in vars of total degree <= degree, each listed once.
inline std::vector<Monomial> monomials_up_to(const std::vector<Var>& vars, unsigned degree) {
  std::vector<Monomial> out{Monomial()};
  std::vector<Monomial> frontier{Monomial()};
  for (unsigned d = 1; d <= degree; ++d) {
    std::vector<Monomial> next;
    for (const auto& m : frontier)
      for (std::size_t i = 0; i < vars.size(); ++i) {
        // Only multiply by variables at or after the last one used.
        bool ok = true;
        for (std::size_t j = i + 1; j < vars.size(); ++j)
          if (m.exponent(vars[j]) > 0) ok = false;
        if (ok) next.push_back(m * Monomial::of(vars[i]));
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

/// Monic part of den involving only the given variables.
inline MultiPoly restricted_part(MultiPoly den, const std::vector<Var>& keep) {
  for (Var v : den.variables())
    if (std::find(keep.begin(), keep.end(), v) == keep.end()) den = content_in(den, v);
  return den.monic();
}

}  // namespace isomono::detail
