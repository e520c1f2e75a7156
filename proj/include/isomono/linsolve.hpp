#pragma once

#include <map>
#include <optional>
#include <vector>

#include "isomono/matrix.hpp"

namespace isomono {

/// Solution set of M s = rhs: a particular solution plus a nullspace basis.
template <class T>
struct LinearSolution {
  bool consistent = false;
  std::vector<T> particular;
  std::vector<std::vector<T>> nullspace;
};

/// Reduced row echelon form in place; returns pivot columns. Row updates for
/// a pivot run in parallel under Exec::parallel.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& m, Exec exec = default_exec(), std::size_t col_limit = ~std::size_t{0}) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = m.rows(), cols = std::min(m.cols(), col_limit);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!field_is_zero(m(i, c))) {
        p = i;
        break;
      }
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    T inv = T(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j)
      if (!field_is_zero(m(r, j))) m(r, j) = m(r, j) * inv;
    parallel_for(rows, exec, [&](std::size_t i) {
      if (i == r || field_is_zero(m(i, c))) return;
      T factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!field_is_zero(m(r, j))) m(i, j) = m(i, j) - factor * m(r, j);
    });
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Gauss-Jordan elimination on [M | rhs]. Every returned vector satisfies
/// the system exactly.
template <class T>
LinearSolution<T> linear_solve(const Matrix<T>& m, const std::vector<T>& rhs, Exec exec = default_exec()) {
  if (rhs.size() != m.rows()) throw std::invalid_argument("linear_solve: rhs length mismatch");
  const std::size_t n = m.cols();
  Matrix<T> aug(m.rows(), n + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n) = rhs[i];
  }
  auto pivots = rref(aug, exec, n);
  LinearSolution<T> sol;
  for (std::size_t i = pivots.size(); i < aug.rows(); ++i)
    if (!field_is_zero(aug(i, n))) return sol;
  sol.consistent = true;
  sol.particular.assign(n, T(0));
  std::vector<bool> is_pivot(n, false);
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    sol.particular[pivots[k]] = aug(k, n);
    is_pivot[pivots[k]] = true;
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<T> v(n, T(0));
    v[f] = T(1);
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -aug(k, f);
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

template <class T>
std::size_t rank(Matrix<T> m, Exec exec = default_exec()) {
  return rref(m, exec).size();
}

/// Inverse of a square matrix, or nullopt when singular.
template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m, Exec exec = default_exec()) {
  if (!m.is_square()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  Matrix<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = T(1);
  }
  auto pivots = rref(aug, exec, n);
  if (pivots.size() < n) return std::nullopt;
  Matrix<T> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// Incremental sparse echelon form over Q for large, sparse ansatz systems.
/// Equations are reduced as they arrive, so memory is bounded by the number
/// of unknowns rather than the number of equations.
class SparseQSystem {
 public:
  using Row = std::map<std::size_t, Q>;

  explicit SparseQSystem(std::size_t unknowns) : unknowns_(unknowns) {}

  /// Adds sum_j row[j] * u_j = rhs. Returns false once the system is
  /// known to be inconsistent.
  bool add_equation(Row row, Q rhs);
  bool consistent() const noexcept { return consistent_; }
  std::size_t unknowns() const noexcept { return unknowns_; }
  std::size_t rank() const noexcept { return pivots_.size(); }

  LinearSolution<Q> solve() const;

 private:
  struct Pivot {
    Row row;  // leading entry at the key column, normalized to 1
    Q rhs;
  };
  std::size_t unknowns_;
  std::map<std::size_t, Pivot> pivots_;
  bool consistent_ = true;
};

}  // namespace isomono
