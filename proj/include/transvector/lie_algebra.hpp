#pragma once

#include "transvector/algebra_vector.hpp"
#include "transvector/dense_matrix.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace transvector {

/// Exact complex rational, used for matrix realizations (su(n,1) needs i).
struct ComplexRational {
  Rational re;
  Rational im;

  ComplexRational() : re(0), im(0) {}
  ComplexRational(int r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
  ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  ComplexRational conj() const { return {re, -im}; }
  ComplexRational& operator+=(const ComplexRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexRational& operator-=(const ComplexRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
  friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
  friend ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

inline bool is_zero(const ComplexRational& z) { return sgn(z.re) == 0 && sgn(z.im) == 0; }

using ComplexRationalMatrix = DenseMatrix<ComplexRational>;

ComplexRationalMatrix adjoint(const ComplexRationalMatrix& m);
ComplexRationalMatrix commutator(const ComplexRationalMatrix& a, const ComplexRationalMatrix& b);

/// How the Cartan involution acts on group elements of the realization.
enum class GroupInvolution {
  inverse_adjoint,  // theta(g) = (g^dagger)^{-1}, differential X -> -X^dagger
};

/// Matrix realization of the algebra: basis element e_i maps to images[i].
struct MatrixRealization {
  std::size_t size = 0;
  std::vector<ComplexRationalMatrix> images;
  GroupInvolution involution = GroupInvolution::inverse_adjoint;
};

/// [e_i, e_j] = value, stored only for i < j and only when nonzero.
struct BracketTerm {
  std::size_t i = 0;
  std::size_t j = 0;
  ExactVector value;
};

/// Real semisimple Lie algebra g = k + p with Cartan involution, given by
/// structure constants. Killing form and the k/p bases are derived from the
/// table on construction. Construction does not validate; see
/// validate_algebra().
class StructuredLieAlgebra {
 public:
  StructuredLieAlgebra(std::string name, std::vector<std::string> labels, std::vector<BracketTerm> brackets,
                       RationalMatrix theta, std::optional<MatrixRealization> realization = std::nullopt);

  /// Builds the bracket table and Theta from a matrix realization by exact
  /// linear solves. Throws if a commutator leaves the span of the images.
  static StructuredLieAlgebra from_realization(std::string name, std::vector<std::string> labels,
                                               MatrixRealization realization);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t index_of(const std::string& label) const;
  const std::vector<BracketTerm>& bracket_table() const { return table_; }
  const RationalMatrix& theta() const { return theta_; }
  const RationalMatrix& killing() const { return killing_; }
  const std::vector<ExactVector>& k_basis() const { return k_basis_; }
  const std::vector<ExactVector>& p_basis() const { return p_basis_; }
  const std::optional<MatrixRealization>& realization() const { return realization_; }

  /// Structure constant c_ij^k with full antisymmetric extension.
  const Rational& structure_constant(std::size_t i, std::size_t j, std::size_t k) const {
    return dense_[(i * dim() + j) * dim() + k];
  }

  template <class T>
  AlgebraVector<T> bracket(const AlgebraVector<T>& x, const AlgebraVector<T>& y) const;

  template <class T>
  AlgebraVector<T> apply_theta(const AlgebraVector<T>& v) const;

  template <class T>
  T killing_form(const AlgebraVector<T>& x, const AlgebraVector<T>& y) const;

  /// Matrix of ad_x in the algebra basis (column j holds [x, e_j]).
  template <class T>
  DenseMatrix<T> ad_matrix(const AlgebraVector<T>& x) const;

  ExactVector zero() const { return ExactVector(dim()); }
  ExactVector unit(std::size_t i) const { return ExactVector::unit(dim(), i); }
  ExactVector unit(const std::string& label) const { return unit(index_of(label)); }

 private:
  struct PairTerms {
    std::size_t i;
    std::size_t j;
    std::vector<std::pair<std::size_t, Rational>> exact;
    std::vector<std::pair<std::size_t, double>> real;
  };

  void check_dim(std::size_t n) const;

  std::string name_;
  std::vector<std::string> labels_;
  std::vector<BracketTerm> table_;
  std::vector<PairTerms> pairs_;
  std::vector<Rational> dense_;
  RationalMatrix theta_;
  DenseMatrix<double> theta_f_;
  RationalMatrix killing_;
  DenseMatrix<double> killing_f_;
  std::vector<ExactVector> k_basis_;
  std::vector<ExactVector> p_basis_;
  std::optional<MatrixRealization> realization_;
};

using AlgebraPtr = std::shared_ptr<const StructuredLieAlgebra>;

// ---------------------------------------------------------------------------
// Free-function operations.

template <class T>
AlgebraVector<T> bracket(const StructuredLieAlgebra& a, const AlgebraVector<T>& x, const AlgebraVector<T>& y) {
  return a.bracket(x, y);
}

/// ad_Y^k X by iterated brackets.
template <class T>
AlgebraVector<T> ad_power(const StructuredLieAlgebra& a, const AlgebraVector<T>& y, unsigned k,
                          const AlgebraVector<T>& x) {
  AlgebraVector<T> r = x;
  if (y.size() != a.dim() || x.size() != a.dim()) throw std::invalid_argument("ad_power: dimension mismatch");
  for (unsigned i = 0; i < k; ++i) r = a.bracket(y, r);
  return r;
}

/// The chain X, ad_Y X, ..., ad_Y^k X.
template <class T>
std::vector<AlgebraVector<T>> ad_chain(const StructuredLieAlgebra& a, const AlgebraVector<T>& y, unsigned k,
                                       const AlgebraVector<T>& x) {
  std::vector<AlgebraVector<T>> chain;
  chain.reserve(k + 1);
  chain.push_back(x);
  for (unsigned i = 0; i < k; ++i) chain.push_back(a.bracket(y, chain.back()));
  return chain;
}

template <class T>
T killing_form(const StructuredLieAlgebra& a, const AlgebraVector<T>& x, const AlgebraVector<T>& y) {
  return a.killing_form(x, y);
}

template <class T>
struct CartanParts {
  AlgebraVector<T> k_part;
  AlgebraVector<T> p_part;
};

template <class T>
CartanParts<T> cartan_split(const StructuredLieAlgebra& a, const AlgebraVector<T>& v) {
  const AlgebraVector<T> tv = a.apply_theta(v);
  AlgebraVector<T> k = v + tv;
  AlgebraVector<T> p = v - tv;
  k *= T(1) / T(2);
  p *= T(1) / T(2);
  return {std::move(k), std::move(p)};
}

/// Residual of v against membership in p (||v + Theta v||); 0 exactly in
/// exact mode iff v lies in p.
template <class T>
double p_residual(const StructuredLieAlgebra& a, const AlgebraVector<T>& v) {
  return (v + a.apply_theta(v)).coefficient_norm();
}

template <class T>
bool in_p(const StructuredLieAlgebra& a, const AlgebraVector<T>& v) {
  if constexpr (scalar_mode_of<T>() == ScalarMode::exact) {
    return (v + a.apply_theta(v)).is_zero();
  } else {
    return p_residual(a, v) <= 1e-9 * (1.0 + v.coefficient_norm());
  }
}

template <class T>
bool in_k(const StructuredLieAlgebra& a, const AlgebraVector<T>& v) {
  if constexpr (scalar_mode_of<T>() == ScalarMode::exact) {
    return (v - a.apply_theta(v)).is_zero();
  } else {
    return (v - a.apply_theta(v)).coefficient_norm() <= 1e-9 * (1.0 + v.coefficient_norm());
  }
}

/// R(u,v)w = -[[u,v],w] on p. Throws std::domain_error if an operand is not in p.
template <class T>
AlgebraVector<T> curvature_tensor(const StructuredLieAlgebra& a, const AlgebraVector<T>& u,
                                  const AlgebraVector<T>& v, const AlgebraVector<T>& w) {
  if (!in_p(a, u) || !in_p(a, v) || !in_p(a, w)) throw std::domain_error("curvature_tensor: operand not in p");
  return -a.bracket(a.bracket(u, v), w);
}

/// Jacobi operator along direction c: v -> R(v,c)c. Its quadratic form
/// B(R(v,c)c, v) is the (unnormalized) sectional curvature, hence <= 0.
template <class T>
AlgebraVector<T> jacobi_operator(const StructuredLieAlgebra& a, const AlgebraVector<T>& c,
                                 const AlgebraVector<T>& v) {
  return curvature_tensor(a, v, c, c);
}

struct ValidationEntry {
  std::string name;
  double residual = 0.0;
  bool passed = true;
  std::string detail;
};

struct ValidationReport {
  ScalarMode mode = ScalarMode::exact;
  std::vector<ValidationEntry> entries;

  bool passed() const {
    for (const auto& e : entries)
      if (!e.passed) return false;
    return true;
  }
  const ValidationEntry* find(const std::string& name) const {
    for (const auto& e : entries)
      if (e.name == name) return &e;
    return nullptr;
  }
};

/// Checks antisymmetry, Jacobi identity, Theta^2 = 1, Theta automorphism,
/// Killing symmetry/invariance/signature, nondegeneracy, the k/p bracket
/// inclusions, and (when present) the matrix realization. All exact.
ValidationReport validate_algebra(const StructuredLieAlgebra& a);

// ---------------------------------------------------------------------------
// Template definitions.

template <class T>
AlgebraVector<T> StructuredLieAlgebra::bracket(const AlgebraVector<T>& x, const AlgebraVector<T>& y) const {
  check_dim(x.size());
  check_dim(y.size());
  AlgebraVector<T> out(dim());
  for (const auto& p : pairs_) {
    const T& xi = x[p.i];
    const T& xj = x[p.j];
    const T& yi = y[p.i];
    const T& yj = y[p.j];
    if ((is_zero(xi) || is_zero(yj)) && (is_zero(xj) || is_zero(yi))) continue;
    const T coef = xi * yj - xj * yi;
    if (is_zero(coef)) continue;
    if constexpr (scalar_mode_of<T>() == ScalarMode::exact) {
      for (const auto& [k, c] : p.exact) out[k] += coef * c;
    } else {
      for (const auto& [k, c] : p.real) out[k] += coef * c;
    }
  }
  return out;
}

template <class T>
AlgebraVector<T> StructuredLieAlgebra::apply_theta(const AlgebraVector<T>& v) const {
  check_dim(v.size());
  if constexpr (scalar_mode_of<T>() == ScalarMode::exact) {
    return AlgebraVector<T>(theta_.apply(v.coeffs()));
  } else {
    return AlgebraVector<T>(theta_f_.apply(v.coeffs()));
  }
}

template <class T>
T StructuredLieAlgebra::killing_form(const AlgebraVector<T>& x, const AlgebraVector<T>& y) const {
  check_dim(x.size());
  check_dim(y.size());
  std::vector<T> by;
  if constexpr (scalar_mode_of<T>() == ScalarMode::exact) {
    by = killing_.apply(y.coeffs());
  } else {
    by = killing_f_.apply(y.coeffs());
  }
  T acc(0);
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!is_zero(x[i])) acc += x[i] * by[i];
  }
  return acc;
}

template <class T>
DenseMatrix<T> StructuredLieAlgebra::ad_matrix(const AlgebraVector<T>& x) const {
  check_dim(x.size());
  DenseMatrix<T> m(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    AlgebraVector<T> e(dim());
    e[j] = T(1);
    const auto col = bracket(x, e);
    for (std::size_t i = 0; i < dim(); ++i) m(i, j) = col[i];
  }
  return m;
}

}  // namespace transvector
