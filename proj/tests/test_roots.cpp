#include "support.hpp"
#include "transvector/restricted_roots.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <map>

using namespace transvector;

namespace {

// Eigenvalues of ad_H on g, computed in floating point by Eigen, rounded and
// counted. Independent of the exact decomposition.
std::map<long, std::size_t> ad_spectrum(const StructuredLieAlgebra& a, const ExactVector& h, double scale) {
  const auto ad = a.ad_matrix(h);
  Eigen::MatrixXd m(a.dim(), a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) m(i, j) = to_double(ad(i, j));
  const Eigen::EigenSolver<Eigen::MatrixXd> es(m);
  std::map<long, std::size_t> counts;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    CHECK(std::abs(es.eigenvalues()(i).imag()) < 1e-9);
    ++counts[std::lround(es.eigenvalues()(i).real() * scale)];
  }
  return counts;
}

std::size_t total_g(const RootDatum& rd) {
  std::size_t n = rd.a.dim() + rd.m.dim();
  for (const auto& r : rd.positive) n += 2 * r.g_space.dim();
  return n;
}

}  // namespace

TEST_CASE("su(2,1) has roots lambda and 2 lambda with multiplicities 2 and 1") {
  const auto e = build_space("su21");
  const auto a = maximal_abelian(e.algebra);
  CHECK(a.dim() == 1);
  CHECK(is_maximal_abelian(a));
  const auto rd = restricted_root_decomposition(e.algebra, a);
  REQUIRE(rd.positive.size() == 2);
  CHECK(rd.positive[1].values[0] == 2 * rd.positive[0].values[0]);
  CHECK(rd.positive[0].multiplicity == 2);
  CHECK(rd.positive[1].multiplicity == 1);
  CHECK(rd.positive[0].p_space.dim() == 2);
  CHECK(rd.positive[1].p_space.dim() == 1);
  CHECK(rd.m.dim() == 1);
  CHECK(total_g(rd) == e.algebra->dim());
  CHECK(rd.roots.size() == 4);

  const auto spec = ad_spectrum(*e.algebra, a.basis()[0], 1.0 / to_double(rd.positive[0].values[0]));
  CHECK(spec.at(0) == 2);
  CHECK(spec.at(1) == 2);
  CHECK(spec.at(-1) == 2);
  CHECK(spec.at(2) == 1);
  CHECK(spec.at(-2) == 1);
}

TEST_CASE("su(3,1) roots") {
  const auto e = build_space("su31");
  const auto rd = restricted_root_decomposition(e.algebra, maximal_abelian(e.algebra));
  REQUIRE(rd.positive.size() == 2);
  CHECK(rd.positive[0].multiplicity == 4);
  CHECK(rd.positive[1].multiplicity == 1);
  CHECK(total_g(rd) == e.algebra->dim());
}

TEST_CASE("so(3,1) is rank one with a single root of multiplicity two") {
  const auto e = build_space("so31");
  const auto rd = restricted_root_decomposition(e.algebra, maximal_abelian(e.algebra));
  REQUIRE(rd.positive.size() == 1);
  CHECK(rd.positive[0].multiplicity == 2);
  CHECK(rd.m.dim() == 1);
}

TEST_CASE("sl(3,R) is split of type A2") {
  const auto e = build_space("sl3r");
  const auto a = maximal_abelian(e.algebra);
  CHECK(a.dim() == 2);
  const auto rd = restricted_root_decomposition(e.algebra, a);
  REQUIRE(rd.positive.size() == 3);
  for (const auto& r : rd.positive) CHECK(r.multiplicity == 1);
  CHECK(rd.m.dim() == 0);
  CHECK(rd.roots.size() == 6);
  // One positive root is the sum of the other two.
  bool additive = false;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        if (i == j || j == k || i == k) continue;
        bool sum = true;
        for (std::size_t c = 0; c < 2; ++c)
          sum = sum && rd.positive[i].values[c] + rd.positive[j].values[c] == rd.positive[k].values[c];
        additive = additive || sum;
      }
  CHECK(additive);
}

TEST_CASE("sl(2,R) root value on H") {
  const auto e = build_space("sl2r");
  const ExactSubspace a(e.algebra, {e.algebra->unit("H")});
  CHECK(is_maximal_abelian(a));
  const auto rd = restricted_root_decomposition(e.algebra, a);
  REQUIRE(rd.positive.size() == 1);
  CHECK(rd.positive[0].values[0] == 2);
}

TEST_CASE("root system is symmetric and ad_H squared acts by lambda squared") {
  for (const char* id : {"su21", "su31", "so31", "sl3r"}) {
    CAPTURE(id);
    const auto e = build_space(id);
    const auto& alg = *e.algebra;
    const auto rd = restricted_root_decomposition(e.algebra, maximal_abelian(e.algebra));
    for (const auto& r : rd.roots) {
      std::vector<Rational> neg;
      for (const auto& q : r) neg.push_back(-q);
      CHECK(std::find(rd.roots.begin(), rd.roots.end(), neg) != rd.roots.end());
    }
    for (const auto& r : rd.positive) {
      CHECK(r.k_space.dim() == r.p_space.dim());
      CHECK(r.k_space.dim() == r.multiplicity);
      for (std::size_t i = 0; i < rd.a.dim(); ++i) {
        const auto& h = rd.a.basis()[i];
        for (const auto& v : r.p_space.basis())
          CHECK(alg.bracket(h, alg.bracket(h, v)) == (r.values[i] * r.values[i]) * v);
        for (const auto& v : r.g_space.basis()) CHECK(alg.bracket(h, v) == r.values[i] * v);
      }
    }
  }
}

TEST_CASE("commutation rules hold exactly") {
  for (const char* id : {"su21", "su31", "so31", "sl3r"}) {
    CAPTURE(id);
    const auto e = build_space(id);
    const auto rd = restricted_root_decomposition(e.algebra, maximal_abelian(e.algebra));
    const auto rep = verify_commutation_rules(rd);
    CHECK(rep.holds);
    CHECK(rep.checked > 0);
    for (const auto& r : rep.rules) CHECK(r.residual == 0.0);
  }
}

TEST_CASE("root space examples certify the condition") {
  for (const char* id : {"su21", "sl3r"}) {
    CAPTURE(id);
    const auto e = build_space(id);
    const auto rd = restricted_root_decomposition(e.algebra, maximal_abelian(e.algebra));
    for (std::size_t li = 0; li < rd.positive.size(); ++li) {
      for (const auto& x : rd.a.basis()) {
        const auto ex = build_root_space_example(rd, li, x, 16, 1);
        CHECK(ex.lie_triple_system);
        CHECK(ex.odd_chain_in_k_lambda);
        CHECK(ex.even_chain_in_a_plus_p2lambda);
        CHECK(ex.condition.holds);
        CHECK(ex.certified());
      }
    }
  }
}

TEST_CASE("a non maximal abelian subspace is rejected") {
  const auto e = build_space("sl3r");
  const ExactSubspace a(e.algebra, {e.algebra->unit("H1")});
  CHECK_FALSE(is_maximal_abelian(a));
  CHECK_THROWS(restricted_root_decomposition(e.algebra, a));
}
