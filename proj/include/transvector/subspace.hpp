#pragma once

#include "transvector/lie_algebra.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

namespace transvector {

template <class T>
struct Membership {
  bool member = false;
  double residual = 0.0;          // 0 exactly in exact mode iff member
  AlgebraVector<T> remainder;     // component left after removing the span
};

/// Subspace of g spanned by coefficient columns. Exact mode decides
/// membership by elimination over Q; float mode by least squares with
/// tolerance eps = 1e-9 * (1 + ||v||).
template <class T>
class Subspace {
 public:
  static constexpr double kFloatTolerance = 1e-9;

  Subspace() = default;

  /// Keeps the linearly independent columns of `spanning`, in order.
  Subspace(AlgebraPtr alg, const std::vector<AlgebraVector<T>>& spanning) : alg_(std::move(alg)) {
    if (!alg_) throw std::invalid_argument("subspace needs an ambient algebra");
    for (const auto& v : spanning) add(v);
  }

  static Subspace zero(AlgebraPtr alg) { return Subspace(std::move(alg), {}); }

  const StructuredLieAlgebra& algebra() const { return *alg_; }
  const AlgebraPtr& algebra_ptr() const { return alg_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<AlgebraVector<T>>& basis() const { return basis_; }

  bool same_ambient(const Subspace& o) const { return alg_ == o.alg_; }
  void require_same_ambient(const Subspace& o) const {
    if (!same_ambient(o)) throw std::invalid_argument("subspaces live in different algebras");
  }

  double tolerance_for(const AlgebraVector<T>& v) const {
    if constexpr (scalar_mode_of<T>() == ScalarMode::exact) {
      return 0.0;
    } else {
      return kFloatTolerance * (1.0 + v.coefficient_norm());
    }
  }

  Membership<T> contains(const AlgebraVector<T>& v) const {
    if (v.size() != alg_->dim()) throw std::invalid_argument("contains: vector from a different ambient algebra");
    Membership<T> m;
    m.remainder = reduce(v);
    m.residual = m.remainder.coefficient_norm();
    if constexpr (scalar_mode_of<T>() == ScalarMode::exact) {
      m.member = m.remainder.is_zero();
    } else {
      m.member = m.residual <= tolerance_for(v);
    }
    return m;
  }

  bool includes(const Subspace& o) const {
    require_same_ambient(o);
    for (const auto& v : o.basis())
      if (!contains(v).member) return false;
    return true;
  }

  bool same_span(const Subspace& o) const { return dim() == o.dim() && includes(o); }

  bool inside_p() const {
    for (const auto& v : basis_)
      if (!in_p(*alg_, v)) return false;
    return true;
  }

  friend Subspace operator+(const Subspace& a, const Subspace& b) {
    a.require_same_ambient(b);
    Subspace r = a;
    for (const auto& v : b.basis_) r.add(v);
    return r;
  }

 private:
  AlgebraVector<T> reduce(const AlgebraVector<T>& v) const {
    AlgebraVector<T> r = v;
    if constexpr (scalar_mode_of<T>() == ScalarMode::exact) {
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const T f = r[pivots_[i]];
        if (is_zero(f)) continue;
        r -= f * rows_[i];
      }
    } else {
      // Two passes of modified Gram-Schmidt keep the residual at rounding level.
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : rows_) {
          double dot = 0.0;
          for (std::size_t k = 0; k < r.size(); ++k) dot += q[k] * r[k];
          r -= dot * q;
        }
      }
    }
    return r;
  }

  void add(const AlgebraVector<T>& v) {
    if (v.size() != alg_->dim()) throw std::invalid_argument("subspace column has wrong dimension");
    AlgebraVector<T> r = reduce(v);
    if constexpr (scalar_mode_of<T>() == ScalarMode::exact) {
      if (r.is_zero()) return;
      std::size_t p = 0;
      while (is_zero(r[p])) ++p;
      r *= T(1) / r[p];
      pivots_.push_back(p);
      rows_.push_back(std::move(r));
    } else {
      const double n = r.coefficient_norm();
      if (n <= 1e-10 * (1.0 + v.coefficient_norm())) return;
      r *= 1.0 / n;
      rows_.push_back(std::move(r));
    }
    basis_.push_back(v);
  }

  AlgebraPtr alg_;
  std::vector<AlgebraVector<T>> basis_;
  std::vector<AlgebraVector<T>> rows_;   // echelon rows (exact) or orthonormal frame (float)
  std::vector<std::size_t> pivots_;
};

using ExactSubspace = Subspace<Rational>;
using FloatSubspace = Subspace<double>;

inline FloatSubspace to_float(const ExactSubspace& s) {
  std::vector<FloatVector> cols;
  for (const auto& v : s.basis()) cols.push_back(to_float(v));
  return FloatSubspace(s.algebra_ptr(), cols);
}

}  // namespace transvector
