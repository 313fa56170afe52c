#include "support.hpp"
#include "transvector/triple_systems.hpp"

#include <doctest.h>

#include <Eigen/Dense>

using namespace transvector;
using tvtest::vec;

namespace {

using Mat = std::vector<std::vector<std::complex<double>>>;

Mat commutator(const Mat& x, const Mat& y) {
  const std::size_t n = x.size();
  Mat c(n, std::vector<std::complex<double>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) c[i][j] += x[i][k] * y[k][j] - y[i][k] * x[k][j];
  return c;
}

Eigen::VectorXd flatten(const Mat& m) {
  const std::size_t n = m.size();
  Eigen::VectorXd v(2 * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      v(2 * (i * n + j)) = m[i][j].real();
      v(2 * (i * n + j) + 1) = m[i][j].imag();
    }
  return v;
}

// Lie triple system test done with matrices and least squares, independent
// of the structure constants.
bool matrix_lts(const ExactSubspace& s) {
  const auto& a = s.algebra();
  std::vector<Mat> basis;
  for (const auto& v : s.basis()) basis.push_back(tvtest::image(a, v));
  if (basis.empty()) return true;
  Eigen::MatrixXd span(flatten(basis[0]).size(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) span.col(static_cast<Eigen::Index>(k)) = flatten(basis[k]);
  const auto qr = span.colPivHouseholderQr();
  for (const auto& x : basis)
    for (const auto& y : basis)
      for (const auto& z : basis) {
        const Eigen::VectorXd t = flatten(commutator(commutator(x, y), z));
        const Eigen::VectorXd r = span * qr.solve(t) - t;
        if (r.norm() > 1e-9 * (1.0 + t.norm())) return false;
      }
  return true;
}

}  // namespace

TEST_CASE("catalog pair predicates agree with the matrix oracle") {
  for (const char* id : {"su21", "su31", "so31", "sl3r", "sl2r"}) {
    const auto e = build_space(id);
    for (const auto& p : e.pairs) {
      CAPTURE(id);
      CAPTURE(p.name);
      const auto inst = build_pair(e, p.name);
      CHECK(is_lie_triple_system(inst.s).holds == matrix_lts(inst.s));
      CHECK(is_lie_triple_system(inst.s).holds == p.expected.lie_triple_system);
      CHECK(is_reflective(inst.s).holds == p.expected.reflective);
      if (p.expected.totally_real) CHECK(is_totally_real(inst.s, *e.complex_structure).holds == *p.expected.totally_real);
      CHECK(inst.s.dim() + inst.normal.dim() == e.algebra->p_basis().size());
    }
  }
}

TEST_CASE("non triple systems report a reproducible witness") {
  const auto e = build_space("su21");
  const auto a = e.algebra;
  const ExactSubspace s(a, {vec(*a, {{"P1", 1}}), vec(*a, {{"Q1", 1}, {"P2", 1}})});
  CHECK_FALSE(matrix_lts(s));
  const auto r = is_lie_triple_system(s);
  REQUIRE_FALSE(r.holds);
  REQUIRE(r.witness);
  const auto& w = *r.witness;
  const auto t = a->bracket(a->bracket(s.basis()[w.i], s.basis()[w.j]), s.basis()[w.k]);
  CHECK_FALSE(s.contains(t).member);
  CHECK(w.residual > 0);
  CHECK(r.max_residual >= w.residual);
}

TEST_CASE("trivial and whole subspaces") {
  const auto e = build_space("sl3r");
  const auto a = e.algebra;
  CHECK(is_lie_triple_system(ExactSubspace::zero(a)).holds);
  const ExactSubspace p(a, a->p_basis());
  CHECK(is_lie_triple_system(p).holds);
  CHECK(orthocomplement_in_p(p).dim() == 0);
  CHECK(orthocomplement_in_p(ExactSubspace::zero(a)).dim() == a->p_basis().size());
}

TEST_CASE("orthocomplement is B-orthogonal and complementary") {
  for (const char* id : {"su21", "su31", "sl3r"}) {
    const auto e = build_space(id);
    for (const auto& pr : e.pairs) {
      const ExactSubspace s(e.algebra, pr.basis);
      const auto perp = orthocomplement_in_p(s);
      for (const auto& u : s.basis())
        for (const auto& v : perp.basis()) CHECK(e.algebra->killing_form(u, v) == 0);
      CHECK((s + perp).dim() == e.algebra->p_basis().size());
      CHECK(perp.inside_p());
    }
  }
}

TEST_CASE("reflective subspaces have reflective complements") {
  const auto e = build_space("su21");
  const auto inst = build_pair(e, "complex-hyperplane");
  const auto r = is_reflective(inst.s);
  CHECK(r.holds);
  CHECK(r.dim_b == 2);
  CHECK(r.dim_perp == 2);
  CHECK(is_reflective(inst.normal).holds);
  CHECK_FALSE(is_totally_real(inst.s, *e.complex_structure).holds);
  CHECK(is_totally_real(build_pair(e, "real-form").s, *e.complex_structure).holds);
}

TEST_CASE("complex structure squares to minus one on p") {
  for (const char* id : {"su21", "su31"}) {
    const auto e = build_space(id);
    REQUIRE(e.complex_structure);
    const auto& a = *e.algebra;
    for (const auto& v : a.p_basis()) {
      const auto jv = e.complex_structure->apply(v);
      CHECK(in_p(a, jv));
      CHECK(e.complex_structure->apply(jv) == -v);
      CHECK(a.killing_form(v, jv) == 0);
    }
  }
  CHECK_FALSE(build_space("sl3r").complex_structure);
}

TEST_CASE("float subspace membership is scale aware") {
  const auto e = build_space("su21");
  const auto s = to_float(build_pair(e, "real-form").s);
  FloatVector v = s.basis()[0];
  v *= 1e6;
  CHECK(s.contains(v).member);
  auto off = to_float(e.algebra->unit("Q1"));
  off *= 1e-3;
  CHECK_FALSE(s.contains(off).member);
}
