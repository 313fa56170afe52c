#pragma once

#include "transvector/rational.hpp"

#include <cassert>
#include <cstddef>
#include <optional>
#include <vector>

namespace transvector {

/// Row-major dense matrix over an arbitrary field type. Used for exact
/// rational work where Eigen's expression templates would fight mpq_class.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  const T& operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    assert(v.size() == cols_);
    std::vector<T> out(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i) {
      T acc(0);
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!is_zero((*this)(i, j)) && !is_zero(v[j])) acc += (*this)(i, j) * v[j];
      }
      out[i] = acc;
    }
    return out;
  }

  DenseMatrix operator*(const DenseMatrix& o) const {
    assert(cols_ == o.rows_);
    DenseMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          if (!is_zero(o(k, j))) r(i, j) += a * o(k, j);
        }
      }
    }
    return r;
  }

  DenseMatrix operator+(const DenseMatrix& o) const {
    DenseMatrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
  }
  DenseMatrix operator-(const DenseMatrix& o) const {
    DenseMatrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
  }

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool operator==(const DenseMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = DenseMatrix<Rational>;

/// Reduced row echelon form over the rationals.
struct Echelon {
  RationalMatrix reduced;            // rank x cols, reduced rows only
  std::vector<std::size_t> pivots;   // pivot column of each reduced row
};

Echelon row_echelon(RationalMatrix m);

std::size_t rank(const RationalMatrix& m);

/// Basis of {x : m x = 0}.
std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m);

/// Solves m x = b exactly; nullopt if inconsistent. Picks the solution with
/// free variables set to zero.
std::optional<std::vector<Rational>> solve(const RationalMatrix& m, const std::vector<Rational>& b);

Rational determinant(RationalMatrix m);

/// Signs of the pivots of a symmetric matrix under symmetric Gaussian
/// elimination (Sylvester inertia). Returns {positive, negative, zero}.
struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
};
Inertia inertia(RationalMatrix symmetric);

}  // namespace transvector
