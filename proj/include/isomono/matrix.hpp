#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "isomono/parallel.hpp"
#include "isomono/ratfunc.hpp"

namespace isomono {

inline bool field_is_zero(const Q& q) { return q == 0; }
inline bool field_is_zero(const RationalFunction& f) { return f.is_zero(); }

/// Dense row-major matrix over a field.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw std::invalid_argument("matrix data size mismatch");
  }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix unit(std::size_t n, std::size_t i, std::size_t j) {
    Matrix m(n, n);
    m(i, j) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<T>& data() const noexcept { return data_; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!field_is_zero(x)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator-() const {
    Matrix m = *this;
    for (auto& x : m.data_) x = -x;
    return m;
  }
  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const T& s, Matrix m) {
    for (auto& x : m.data_) x = s * x;
    return m;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) { return multiply(a, b, default_exec()); }
  friend bool operator==(const Matrix&, const Matrix&) = default;

  /// Entry-parallel product; the serial path is the reference.
  static Matrix multiply(const Matrix& a, const Matrix& b, Exec exec) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch in product");
    Matrix c(a.rows_, b.cols_);
    parallel_for(a.rows_ * b.cols_, exec, [&](std::size_t k) {
      std::size_t i = k / b.cols_, j = k % b.cols_;
      T acc(0);
      for (std::size_t l = 0; l < a.cols_; ++l) {
        if (field_is_zero(a(i, l)) || field_is_zero(b(l, j))) continue;
        acc += a(i, l) * b(l, j);
      }
      c(i, j) = std::move(acc);
    });
    return c;
  }

  template <class F>
  Matrix map(F&& f, Exec exec = default_exec()) const {
    Matrix m(rows_, cols_);
    parallel_for(data_.size(), exec, [&](std::size_t k) { m.data_[k] = f(data_[k]); });
    return m;
  }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  }
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using RMatrix = Matrix<RationalFunction>;
using QMatrix = Matrix<Q>;

inline RMatrix commutator(const RMatrix& a, const RMatrix& b) { return a * b - b * a; }

}  // namespace isomono
