#include "isomono/linsolve.hpp"

namespace isomono {

namespace {

void axpy(SparseQSystem::Row& row, const Q& factor, const SparseQSystem::Row& other) {
  for (const auto& [col, val] : other) {
    auto it = row.find(col);
    if (it == row.end()) {
      row.emplace(col, -factor * val);
    } else {
      it->second -= factor * val;
      if (it->second == 0) row.erase(it);
    }
  }
}

}  // namespace

bool SparseQSystem::add_equation(Row row, Q rhs) {
  if (!consistent_) return false;
  for (auto it = row.begin(); it != row.end();) {
    if (it->second == 0)
      it = row.erase(it);
    else
      ++it;
  }
  // Reduce against existing pivots in increasing column order; pivot rows
  // only have entries at or after their pivot column.
  while (!row.empty()) {
    auto lead = row.begin();
    auto p = pivots_.find(lead->first);
    if (p == pivots_.end()) break;
    Q factor = lead->second;
    axpy(row, factor, p->second.row);
    rhs -= factor * p->second.rhs;
  }
  if (row.empty()) {
    if (rhs != 0) consistent_ = false;
    return consistent_;
  }
  Q inv = 1 / row.begin()->second;
  for (auto& [col, val] : row) val *= inv;
  rhs *= inv;
  std::size_t col = row.begin()->first;
  pivots_.emplace(col, Pivot{std::move(row), std::move(rhs)});
  return true;
}

LinearSolution<Q> SparseQSystem::solve() const {
  LinearSolution<Q> sol;
  if (!consistent_) return sol;
  sol.consistent = true;
  // Back substitution from the last pivot: express each pivot variable in
  // terms of free variables (as a constant plus free-variable coefficients).
  std::map<std::size_t, std::pair<Q, Row>> expr;  // pivot col -> (const, coeffs over free cols)
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    const auto& [col, piv] = *it;
    Q c = piv.rhs;
    Row free;
    for (const auto& [j, a] : piv.row) {
      if (j == col) continue;
      auto e = expr.find(j);
      if (e != expr.end()) {
        c -= a * e->second.first;
        axpy(free, a, e->second.second);
      } else {
        auto f = free.find(j);
        if (f == free.end())
          free.emplace(j, -a);
        else if ((f->second -= a) == 0)
          free.erase(f);
      }
    }
    expr.emplace(col, std::make_pair(c, std::move(free)));
  }
  sol.particular.assign(unknowns_, Q(0));
  for (const auto& [col, e] : expr) sol.particular[col] = e.first;
  for (std::size_t f = 0; f < unknowns_; ++f) {
    if (pivots_.count(f)) continue;
    std::vector<Q> v(unknowns_, Q(0));
    v[f] = 1;
    for (const auto& [col, e] : expr) {
      auto it = e.second.find(f);
      if (it != e.second.end()) v[col] = it->second;
    }
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

}  // namespace isomono
