#pragma once

#include "transvector/rational.hpp"

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace transvector {

/// Coefficient vector of an element of the Lie algebra over its basis.
/// The scalar mode is carried by the type: exact (Rational) or float (double).
/// Mixing modes in one computation is therefore a compile-time error.
template <class T>
class AlgebraVector {
 public:
  using scalar_type = T;
  static constexpr ScalarMode mode = scalar_mode_of<T>();

  AlgebraVector() = default;
  explicit AlgebraVector(std::size_t d) : c_(d, T(0)) {}
  explicit AlgebraVector(std::vector<T> coeffs) : c_(std::move(coeffs)) {}
  AlgebraVector(std::initializer_list<T> coeffs) : c_(coeffs) {}

  static AlgebraVector unit(std::size_t d, std::size_t i) {
    AlgebraVector v(d);
    v.c_.at(i) = T(1);
    return v;
  }

  std::size_t size() const { return c_.size(); }
  T& operator[](std::size_t i) { return c_[i]; }
  const T& operator[](std::size_t i) const { return c_[i]; }
  const std::vector<T>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (!transvector::is_zero(x)) return false;
    return true;
  }

  AlgebraVector& operator+=(const AlgebraVector& o) {
    check_same_size(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  AlgebraVector& operator-=(const AlgebraVector& o) {
    check_same_size(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  AlgebraVector& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

  friend AlgebraVector operator+(AlgebraVector a, const AlgebraVector& b) { return a += b; }
  friend AlgebraVector operator-(AlgebraVector a, const AlgebraVector& b) { return a -= b; }
  friend AlgebraVector operator*(const T& s, AlgebraVector a) { return a *= s; }
  friend AlgebraVector operator*(AlgebraVector a, const T& s) { return a *= s; }
  friend AlgebraVector operator-(AlgebraVector a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend bool operator==(const AlgebraVector& a, const AlgebraVector& b) { return a.c_ == b.c_; }

  /// Euclidean norm of the coefficient vector (basis-dependent; used for
  /// residual reporting only, never as the Riemannian metric).
  double coefficient_norm() const {
    double s = 0.0;
    for (const auto& x : c_) {
      const double v = to_double(x);
      s += v * v;
    }
    return std::sqrt(s);
  }

 private:
  void check_same_size(const AlgebraVector& o) const {
    if (o.size() != size()) throw std::invalid_argument("algebra vector dimension mismatch");
  }

  std::vector<T> c_;
};

using ExactVector = AlgebraVector<Rational>;
using FloatVector = AlgebraVector<double>;

inline FloatVector to_float(const ExactVector& v) {
  FloatVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
  return out;
}

}  // namespace transvector
