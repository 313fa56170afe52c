#include "transvector/triple_systems.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace transvector {

namespace {

template <class T>
void require_in_p(const Subspace<T>& s, const char* what) {
  if (!s.inside_p()) throw std::domain_error(std::string(what) + ": subspace is not contained in p");
}

template <class T>
double pairing_magnitude(const T& x) {
  return std::abs(to_double(x));
}

}  // namespace

template <class T>
Subspace<T> orthocomplement_in_p(const Subspace<T>& s) {
  require_in_p(s, "orthocomplement_in_p");
  const auto& a = s.algebra();
  const std::size_t p = a.p_basis().size();
  std::vector<AlgebraVector<T>> pb;
  for (const auto& v : a.p_basis()) {
    if constexpr (scalar_mode_of<T>() == ScalarMode::exact) {
      pb.push_back(v);
    } else {
      pb.push_back(to_float(v));
    }
  }
  std::vector<AlgebraVector<T>> out;
  if constexpr (scalar_mode_of<T>() == ScalarMode::exact) {
    RationalMatrix m(s.dim(), p);
    for (std::size_t i = 0; i < s.dim(); ++i)
      for (std::size_t j = 0; j < p; ++j) m(i, j) = a.killing_form(s.basis()[i], pb[j]);
    for (const auto& c : nullspace(m)) {
      AlgebraVector<T> v(a.dim());
      for (std::size_t j = 0; j < p; ++j)
        if (sgn(c[j]) != 0) v += c[j] * pb[j];
      out.push_back(std::move(v));
    }
  } else {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(s.dim()), static_cast<Eigen::Index>(p));
    for (std::size_t i = 0; i < s.dim(); ++i)
      for (std::size_t j = 0; j < p; ++j)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a.killing_form(s.basis()[i], pb[j]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-10 * std::max(1.0, smax)) ++r;
    const Eigen::MatrixXd& V = svd.matrixV();
    for (Eigen::Index c = r; c < static_cast<Eigen::Index>(p); ++c) {
      AlgebraVector<T> v(a.dim());
      for (std::size_t j = 0; j < p; ++j) v += V(static_cast<Eigen::Index>(j), c) * pb[j];
      out.push_back(std::move(v));
    }
  }
  return Subspace<T>(s.algebra_ptr(), out);
}

template <class T>
TripleSystemResult<T> triple_inclusion(const Subspace<T>& x, const Subspace<T>& y, const Subspace<T>& z,
                                       const Subspace<T>& target) {
  x.require_same_ambient(y);
  x.require_same_ambient(z);
  x.require_same_ambient(target);
  const auto& a = x.algebra();
  TripleSystemResult<T> r;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    for (std::size_t j = 0; j < y.dim(); ++j) {
      const auto xy = a.bracket(x.basis()[i], y.basis()[j]);
      if (xy.is_zero()) continue;
      for (std::size_t k = 0; k < z.dim(); ++k) {
        const auto m = target.contains(a.bracket(xy, z.basis()[k]));
        if (m.residual > r.max_residual) r.max_residual = m.residual;
        if (!m.member) {
          if (!r.witness || m.residual > r.witness->residual) {
            r.witness = TripleWitness<T>{i, j, k, m.remainder, m.residual};
          }
          r.holds = false;
        }
      }
    }
  }
  return r;
}

template <class T>
TripleSystemResult<T> is_lie_triple_system(const Subspace<T>& s) {
  require_in_p(s, "is_lie_triple_system");
  return triple_inclusion(s, s, s, s);
}

template <class T>
ReflectiveReport is_reflective(const Subspace<T>& b) {
  require_in_p(b, "is_reflective");
  const Subspace<T> perp = orthocomplement_in_p(b);
  ReflectiveReport rep;
  rep.dim_b = b.dim();
  rep.dim_perp = perp.dim();
  auto add = [&](const char* name, const TripleSystemResult<T>& r) {
    rep.conditions.push_back({name, r.holds, r.max_residual});
    rep.holds = rep.holds && r.holds;
  };
  add("b_lie_triple_system", triple_inclusion(b, b, b, b));
  add("perp_lie_triple_system", triple_inclusion(perp, perp, perp, perp));
  add("mixed_b_b_perp_b_in_perp", triple_inclusion(b, perp, b, perp));
  add("mixed_b_b_perp_perp_in_b", triple_inclusion(b, perp, perp, b));
  return rep;
}

template <class T>
TotallyRealResult is_totally_real(const Subspace<T>& b, const ComplexStructure& j) {
  const auto& a = b.algebra();
  if (j.matrix.rows() != a.dim() || j.matrix.cols() != a.dim()) {
    throw std::invalid_argument("is_totally_real: complex structure has wrong shape");
  }
  for (const auto& pv : a.p_basis()) {
    AlgebraVector<T> v;
    if constexpr (scalar_mode_of<T>() == ScalarMode::exact) {
      v = pv;
    } else {
      v = to_float(pv);
    }
    const auto jjv = j.apply(j.apply(v)) + v;
    const bool ok = scalar_mode_of<T>() == ScalarMode::exact ? jjv.is_zero()
                                                              : jjv.coefficient_norm() <= 1e-9 * (1.0 + v.coefficient_norm());
    if (!ok) throw std::invalid_argument("is_totally_real: J does not square to -1 on p");
  }
  TotallyRealResult r;
  for (const auto& x : b.basis()) {
    const auto jx = j.apply(x);
    for (const auto& y : b.basis()) {
      const double m = pairing_magnitude(a.killing_form(jx, y));
      r.max_pairing = std::max(r.max_pairing, m);
    }
  }
  if constexpr (scalar_mode_of<T>() == ScalarMode::exact) {
    r.holds = r.max_pairing == 0.0;
  } else {
    r.holds = r.max_pairing <= 1e-9;
  }
  return r;
}

template Subspace<Rational> orthocomplement_in_p(const Subspace<Rational>&);
template Subspace<double> orthocomplement_in_p(const Subspace<double>&);
template TripleSystemResult<Rational> triple_inclusion(const Subspace<Rational>&, const Subspace<Rational>&,
                                                       const Subspace<Rational>&, const Subspace<Rational>&);
template TripleSystemResult<double> triple_inclusion(const Subspace<double>&, const Subspace<double>&,
                                                     const Subspace<double>&, const Subspace<double>&);
template TripleSystemResult<Rational> is_lie_triple_system(const Subspace<Rational>&);
template TripleSystemResult<double> is_lie_triple_system(const Subspace<double>&);
template ReflectiveReport is_reflective(const Subspace<Rational>&);
template ReflectiveReport is_reflective(const Subspace<double>&);
template TotallyRealResult is_totally_real(const Subspace<Rational>&, const ComplexStructure&);
template TotallyRealResult is_totally_real(const Subspace<double>&, const ComplexStructure&);

}  // namespace transvector
