#include "support.hpp"
#include "transvector/extension.hpp"

#include <doctest.h>

#include <cmath>

using namespace transvector;
using tvtest::vec;

namespace {

struct Sl2Case {
  AlgebraPtr a = tvtest::sl2_by_hand();
  ExactSubspace s{a, {a->unit("H")}};
  ExactVector x = vec(*a, {{"E", 1}, {"F", 1}});
  ExactVector h = a->unit("H");
};

Rational pow2(unsigned k) { return Rational(mpz_class(1) << k); }

}  // namespace

TEST_CASE("sl2 bracket chain closed form") {
  const Sl2Case c;
  for (unsigned n = 0; n <= 6; ++n) {
    const auto odd = ad_power(*c.a, c.h, 2 * n + 1, c.x);
    CHECK(c.a->bracket(c.x, odd) == -pow2(2 * n + 2) * c.h);
  }
  const auto v = condition_holds(c.s, c.x, 64, 1);
  CHECK(v.holds);
  CHECK(v.max_power == 2);
  CHECK_FALSE(v.witness);
  for (double r : v.worst_residual_per_n) CHECK(r == 0.0);
  CHECK(v.mode == ScalarMode::exact);
  CHECK(v.samples == 64);
}

TEST_CASE("sl2 lemma conclusion closed form") {
  const Sl2Case c;
  const auto rep = verify_lemma_conclusion(c.s, c.x, c.h, 4, 4);
  CHECK(rep.passed());
  REQUIRE(rep.conclusion_residuals.size() == 5);
  for (unsigned n = 0; n <= 4; ++n) {
    REQUIRE(rep.conclusion_residuals[n].size() == 5);
    for (unsigned m = 0; m <= 4; ++m) {
      CHECK(rep.conclusion_residuals[n][m] == 0.0);
      const auto br = c.a->bracket(ad_power(*c.a, c.h, 2 * n, c.x), ad_power(*c.a, c.h, 2 * m + 1, c.x));
      CHECK(br == -pow2(2 * n + 2 * m + 2) * c.h);
    }
  }
  // n = m = 0 is the hypothesis term itself.
  CHECK(c.a->bracket(c.x, c.a->bracket(c.h, c.x)) == -pow2(2) * c.h);
}

TEST_CASE("zero Y contributes nothing") {
  const Sl2Case c;
  const auto res = condition_residuals(c.s, c.x, c.a->zero(), 3);
  for (double r : res) CHECK(r == 0.0);
  const auto z = nabla_zz(to_float(c.s), to_float(c.x), to_float(c.a->zero()), 12);
  CHECK(z.value.coefficient_norm() == 0.0);
  CHECK(z.z_k.coefficient_norm() == 0.0);
  CHECK(normal_field_check(c.s, c.x, c.a->zero(), 12) == 0.0);
}

TEST_CASE("nabla_Z Z reproduces -sinh(4) H") {
  const Sl2Case c;
  const auto r = nabla_zz(to_float(c.s), to_float(c.x), to_float(c.h), 12);
  const double target = -std::sinh(4.0);
  CHECK(std::abs(r.value[0] - target) <= 1e-12 * std::abs(target));
  CHECK(std::abs(r.value[1]) <= 1e-12);
  CHECK(std::abs(r.value[2]) <= 1e-12);
  CHECK(r.membership_residual <= 1e-12);
  CHECK(r.discrepancy <= 10 * (r.tail_bound + r.rounding_bound));
  CHECK(r.converged);
  // Z^p = cosh(2) (E + F) is B-orthogonal to H.
  CHECK(std::abs(r.z_p[1] - std::cosh(2.0)) <= 1e-12 * std::cosh(2.0));
  CHECK(normal_field_check(c.s, c.x, c.h, 12) == 0.0);
}

TEST_CASE("series identity within the tail budget on random draws") {
  std::size_t draws = 0;
  for (const char* id : {"su21", "su31"}) {
    const auto e = build_space(id);
    for (const char* pair : {"complex-hyperplane", "real-form"}) {
      const auto inst = build_pair(e, pair);
      const CounterRng rng(5);
      const auto fs = to_float(inst.s);
      const auto x = to_float(random_element(inst.normal, rng, 999));
      for (std::uint64_t k = 0; k < 25; ++k, ++draws) {
        const auto y = to_float(random_element(inst.s, rng, k));
        const auto r = nabla_zz(fs, x, y, 12);
        CHECK(r.discrepancy <= 10 * (r.tail_bound + r.rounding_bound));
        CHECK(r.membership_residual <= 1e-8 * (1.0 + r.value.coefficient_norm()));
      }
    }
  }
  CHECK(draws == 100);
}

TEST_CASE("reflective pairs satisfy the condition for sampled normals") {
  for (const char* id : {"su21", "su31", "so31"}) {
    const auto e = build_space(id);
    for (const auto& p : e.pairs) {
      if (!p.expected.reflective) continue;
      CAPTURE(id);
      CAPTURE(p.name);
      const auto inst = build_pair(e, p.name);
      const CounterRng rng(2);
      for (std::uint64_t k = 0; k < 3; ++k) {
        const auto x = random_element(inst.normal, rng, k);
        if (x.is_zero()) continue;
        CHECK(condition_holds(inst.s, x, 16, 1).holds);
      }
    }
  }
}

TEST_CASE("lemma soundness on every holding pair") {
  const auto e = build_space("su21");
  for (const char* pair : {"complex-hyperplane", "real-form"}) {
    const auto inst = build_pair(e, pair);
    const CounterRng rng(4);
    const auto x = random_element(inst.normal, rng, 100);
    REQUIRE(condition_holds(inst.s, x, 16, 4).holds);
    for (std::uint64_t k = 0; k < 8; ++k) {
      const auto rep = verify_lemma_conclusion(inst.s, x, random_element(inst.s, rng, k), 4, 4);
      CHECK(rep.passed());
      for (const auto& row : rep.auxiliary_residuals)
        for (double r : row) CHECK(r == 0.0);
    }
  }
}

TEST_CASE("condition is invariant under scaling X") {
  const auto e = build_space("sl3r");
  const auto inst = build_pair(e, "symmetric-unit");
  const auto& a = *e.algebra;
  const auto bad = vec(a, {{"H1", 1}, {"E13", 1}, {"E31", 1}});
  const auto good = vec(a, {{"H1", 1}});
  for (const Rational& c : {Rational(1), Rational(-3), Rational(2, 7)}) {
    CHECK_FALSE(condition_holds(inst.s, ExactVector(c * bad), 16, 1).holds);
    CHECK(condition_holds(inst.s, ExactVector(c * good), 16, 1).holds);
  }
}

TEST_CASE("failing verdicts carry a witness that reproduces") {
  const auto e = build_space("sl3r");
  const auto inst = build_pair(e, "symmetric-unit");
  const auto x = vec(*e.algebra, {{"H1", 1}, {"E13", 1}, {"E31", 1}});
  const auto v = condition_holds(inst.s, x, 64, 1);
  REQUIRE_FALSE(v.holds);
  REQUIRE(v.witness);
  const auto& w = *v.witness;
  const auto again = e.algebra->bracket(x, ad_power(*e.algebra, w.y, 2 * w.n + 1, x));
  const auto m = inst.s.contains(again);
  CHECK_FALSE(m.member);
  CHECK(m.residual == doctest::Approx(w.residual));
  CHECK(w.residual > 0);
  // The lemma reports a violated hypothesis, never a contradiction.
  const auto rep = verify_lemma_conclusion(inst.s, x, w.y, 2, 2);
  CHECK(rep.status == LemmaStatus::hypothesis_violated);
}

TEST_CASE("counterexample search") {
  const auto sl3 = build_space("sl3r");
  const auto s = build_pair(sl3, "symmetric-unit").s;
  const auto grid = normal_grid(s, 1);
  CHECK_FALSE(grid.empty());
  const auto found = search_counterexample({s}, grid, 16, 1);
  CHECK_FALSE(found.empty());
  for (const auto& c : found) {
    CHECK(c.candidate == 0);
    CHECK_FALSE(c.verdict.holds);
    CHECK(c.verdict.witness);
  }
  CHECK(search_counterexample({}, grid, 16, 1).empty());

  const auto su = build_space("su21");
  for (const char* p : {"complex-hyperplane", "real-form"}) {
    const auto r = build_pair(su, p).s;
    CHECK(search_counterexample({r}, normal_grid(r, 1), 8, 1).empty());
  }
}

TEST_CASE("preconditions are enforced") {
  const auto su = build_space("su21");
  const auto& a = su.algebra;
  const ExactSubspace not_lts(a, {vec(*a, {{"P1", 1}}), vec(*a, {{"Q1", 1}, {"P2", 1}})});
  CHECK_THROWS_AS(condition_holds(not_lts, vec(*a, {{"Q2", 1}}), 4, 1), std::invalid_argument);
  const auto inst = build_pair(su, "real-form");
  CHECK_THROWS_AS(condition_holds(inst.s, a->k_basis()[0], 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(normal_field_check(inst.s, inst.s.basis()[0], inst.s.basis()[0], 4), std::invalid_argument);
  const auto v = condition_holds(inst.s, ExactVector(inst.s.basis()[0] + inst.normal.basis()[0]), 4, 1);
  CHECK(v.x_not_normal);
}

TEST_CASE("random elements are deterministic and counter based") {
  const auto inst = build_pair(build_space("su31"), "real-form");
  const CounterRng a(9), b(9), c(10);
  CHECK(random_element(inst.s, a, 3) == random_element(inst.s, b, 3));
  CHECK_FALSE(random_element(inst.s, a, 3) == random_element(inst.s, c, 3));
  CHECK_FALSE(random_element(inst.s, a, 3) == random_element(inst.s, a, 4));
  const auto v1 = condition_holds(inst.s, inst.normal.basis()[0], 32, 77);
  const auto v2 = condition_holds(inst.s, inst.normal.basis()[0], 32, 77);
  CHECK(v1.worst_residual_per_n == v2.worst_residual_per_n);
}
