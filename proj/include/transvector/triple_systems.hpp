#pragma once

#include "transvector/subspace.hpp"

#include <optional>
#include <string>

namespace transvector {

/// B-orthogonal complement of s inside p. Requires s to lie in p.
template <class T>
Subspace<T> orthocomplement_in_p(const Subspace<T>& s);

template <class T>
struct TripleWitness {
  std::size_t i = 0, j = 0, k = 0;   // indices into the basis of the tested space(s)
  AlgebraVector<T> residual_vector;
  double residual = 0.0;
};

template <class T>
struct TripleSystemResult {
  bool holds = true;
  double max_residual = 0.0;
  std::optional<TripleWitness<T>> witness;
};

/// [[e_i, e_j], e_k] in s for all basis triples of s.
template <class T>
TripleSystemResult<T> is_lie_triple_system(const Subspace<T>& s);

/// Checks [[a_i, b_j], c_k] in target for all basis triples.
template <class T>
TripleSystemResult<T> triple_inclusion(const Subspace<T>& a, const Subspace<T>& b, const Subspace<T>& c,
                                       const Subspace<T>& target);

struct ReflectiveCondition {
  std::string name;
  bool holds = true;
  double residual = 0.0;
};

struct ReflectiveReport {
  bool holds = true;
  std::size_t dim_b = 0;
  std::size_t dim_perp = 0;
  std::vector<ReflectiveCondition> conditions;
};

/// b and b-perp are Lie triple systems, [[b,b^perp],b] in b^perp and
/// [[b,b^perp],b^perp] in b.
template <class T>
ReflectiveReport is_reflective(const Subspace<T>& b);

/// Complex structure on p, given as a linear map on g coordinates that
/// preserves p.
struct ComplexStructure {
  RationalMatrix matrix;

  template <class T>
  AlgebraVector<T> apply(const AlgebraVector<T>& v) const {
    if constexpr (scalar_mode_of<T>() == ScalarMode::exact) {
      return AlgebraVector<T>(matrix.apply(v.coeffs()));
    } else {
      DenseMatrix<double> m(matrix.rows(), matrix.cols());
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = to_double(matrix(i, j));
      return AlgebraVector<T>(m.apply(v.coeffs()));
    }
  }
};

struct TotallyRealResult {
  bool holds = true;
  double max_pairing = 0.0;   // max |B(Jx, y)| over basis pairs
};

/// B(Jx, y) = 0 for all basis pairs of b. Throws std::invalid_argument if
/// J^2 != -1 on p.
template <class T>
TotallyRealResult is_totally_real(const Subspace<T>& b, const ComplexStructure& j);

}  // namespace transvector
