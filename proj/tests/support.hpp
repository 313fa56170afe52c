#pragma once

#include "transvector/catalog.hpp"
#include "transvector/lie_algebra.hpp"
#include "transvector/subspace.hpp"

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

namespace tvtest {

using namespace transvector;

// sl(2,R) written out by hand: [H,E] = 2E, [H,F] = -2F, [E,F] = H, theta = -transpose.
inline AlgebraPtr sl2_by_hand() {
  auto v = [](int a, int b, int c) { return ExactVector{Rational(a), Rational(b), Rational(c)}; };
  std::vector<BracketTerm> table{{0, 1, v(0, 2, 0)}, {0, 2, v(0, 0, -2)}, {1, 2, v(1, 0, 0)}};
  RationalMatrix theta(3, 3);
  theta(0, 0) = -1;
  theta(1, 2) = -1;
  theta(2, 1) = -1;
  return std::make_shared<const StructuredLieAlgebra>("sl2", std::vector<std::string>{"H", "E", "F"}, table, theta);
}

inline ExactVector vec(const StructuredLieAlgebra& a, std::initializer_list<std::pair<const char*, int>> terms) {
  ExactVector v(a.dim());
  for (const auto& [label, c] : terms) v[a.index_of(label)] += Rational(c);
  return v;
}

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(TRANSVECTOR_FIXTURES) / name;
}

// Complex double image of an algebra vector under the realization.
inline std::vector<std::vector<std::complex<double>>> image(const StructuredLieAlgebra& a, const ExactVector& v) {
  const auto& r = *a.realization();
  std::vector<std::vector<std::complex<double>>> m(r.size, std::vector<std::complex<double>>(r.size));
  for (std::size_t k = 0; k < a.dim(); ++k) {
    if (sgn(v[k]) == 0) continue;
    for (std::size_t i = 0; i < r.size; ++i)
      for (std::size_t j = 0; j < r.size; ++j) {
        const auto& z = r.images[k](i, j);
        m[i][j] += to_double(v[k]) * std::complex<double>(to_double(z.re), to_double(z.im));
      }
  }
  return m;
}

}  // namespace tvtest
