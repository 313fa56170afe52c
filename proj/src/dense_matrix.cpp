#include "transvector/dense_matrix.hpp"

#include <stdexcept>
#include <utility>

namespace transvector {

Echelon row_echelon(RationalMatrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m(p, c)) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
    }
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < cols; ++j) {
      if (sgn(m(r, j)) != 0) m(r, j) *= inv;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < cols; ++j) {
        if (sgn(m(r, j)) != 0) m(i, j) -= f * m(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  RationalMatrix reduced(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) reduced(i, j) = m(i, j);
  return {std::move(reduced), std::move(pivots)};
}

std::size_t rank(const RationalMatrix& m) { return row_echelon(m).pivots.size(); }

std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m) {
  const Echelon e = row_echelon(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Rational>> solve(const RationalMatrix& m, const std::vector<Rational>& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: right-hand side has wrong length");
  RationalMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const Echelon e = row_echelon(std::move(aug));
  std::vector<Rational> x(m.cols(), Rational(0));
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == m.cols()) return std::nullopt;
    x[e.pivots[i]] = e.reduced(i, m.cols());
  }
  return x;
}

Rational determinant(RationalMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

Inertia inertia(RationalMatrix a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inertia of a non-square matrix");
  const std::size_t n = a.rows();
  Inertia out;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i] && sgn(a(i, i)) != 0) {
        piv = i;
        break;
      }
    }
    if (piv == n) {
      // All remaining diagonal entries vanish: use a congruence e_i -> e_i + e_j
      // to create a nonzero pivot from an off-diagonal entry.
      std::size_t bi = n, bj = n;
      for (std::size_t i = 0; i < n && bi == n; ++i) {
        if (done[i]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (!done[j] && j != i && sgn(a(i, j)) != 0) {
            bi = i;
            bj = j;
            break;
          }
        }
      }
      if (bi == n) {
        for (std::size_t i = 0; i < n; ++i)
          if (!done[i]) ++out.zero;
        return out;
      }
      for (std::size_t k = 0; k < n; ++k) a(bi, k) += a(bj, k);
      for (std::size_t k = 0; k < n; ++k) a(k, bi) += a(k, bj);
      piv = bi;
    }
    const Rational d = a(piv, piv);
    if (sgn(d) > 0) ++out.positive;
    else ++out.negative;
    done[piv] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || sgn(a(i, piv)) == 0) continue;
      const Rational f = a(i, piv) / d;
      for (std::size_t j = 0; j < n; ++j) {
        if (!done[j]) a(i, j) -= f * a(piv, j);
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!done[j]) a(piv, j) = 0;
    }
  }
  return out;
}

}  // namespace transvector
