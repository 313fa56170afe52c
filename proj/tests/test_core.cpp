#include "support.hpp"
#include "transvector/alg_file.hpp"
#include "transvector/random.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace transvector;
using tvtest::vec;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-6/8") == Rational(-3, 4));
  CHECK(parse_rational("+5") == Rational(5));
  CHECK(to_string(Rational(-3, 4)) == "-3/4");
  CHECK(to_string(Rational(7)) == "7");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  Rational root;
  CHECK(exact_sqrt(Rational(9, 16), root));
  CHECK(root == Rational(3, 4));
  CHECK_FALSE(exact_sqrt(Rational(2), root));
  CHECK(factorial(6) == 720);
}

TEST_CASE("exact linear algebra against hand results") {
  RationalMatrix m(3, 3);
  const int entries[3][3] = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = entries[i][j];
  CHECK(determinant(m) == 4);
  CHECK(rank(m) == 3);
  const auto in = inertia(m);
  CHECK(in.positive == 3);
  CHECK(in.negative == 0);

  RationalMatrix singular(2, 3);
  singular(0, 0) = 1;
  singular(0, 1) = 2;
  singular(0, 2) = 3;
  singular(1, 0) = 2;
  singular(1, 1) = 4;
  singular(1, 2) = 6;
  CHECK(rank(singular) == 1);
  const auto ns = nullspace(singular);
  REQUIRE(ns.size() == 2);
  for (const auto& v : ns) CHECK(v[0] + 2 * v[1] + 3 * v[2] == 0);

  const auto x = solve(m, {Rational(1), Rational(0), Rational(1)});
  REQUIRE(x);
  CHECK((*x)[0] == 1);
  CHECK((*x)[1] == 1);
  CHECK((*x)[2] == 1);
  CHECK_FALSE(solve(singular, {Rational(1), Rational(0)}));
}

TEST_CASE("sl2 Killing form closed values") {
  const auto a = tvtest::sl2_by_hand();
  const auto H = a->unit("H"), E = a->unit("E"), F = a->unit("F");
  CHECK(a->killing_form(H, H) == 8);
  CHECK(a->killing_form(E, F) == 4);
  CHECK(a->killing_form(E, E) == 0);
  CHECK(a->killing_form(H, E) == 0);
  CHECK(validate_algebra(*a).passed());
  CHECK(a->p_basis().size() == 2);
  CHECK(a->k_basis().size() == 1);
  CHECK(in_p(*a, H));
  CHECK(in_p(*a, ExactVector(E + F)));
  CHECK(in_k(*a, ExactVector(E - F)));
}

TEST_CASE("curvature sign convention is pinned") {
  const auto a = tvtest::sl2_by_hand();
  const ExactVector H = a->unit("H");
  const ExactVector v = vec(*a, {{"E", 1}, {"F", 1}});
  CHECK(curvature_tensor(*a, H, v, H) == Rational(4) * v);
  CHECK(jacobi_operator(*a, H, v) == Rational(-4) * v);
  CHECK(a->killing_form(jacobi_operator(*a, H, v), v) < 0);
  CHECK_THROWS_AS(curvature_tensor(*a, ExactVector(a->unit("E") - a->unit("F")), v, H), std::domain_error);
}

TEST_CASE("Jacobi operator is nonpositive and symmetric on p") {
  const auto e = build_space("su21");
  const auto& a = *e.algebra;
  const CounterRng rng(7);
  auto random_p = [&](std::uint64_t stream) {
    ExactVector v(a.dim());
    for (std::size_t i = 0; i < a.p_basis().size(); ++i) v += rng.small_rational(stream, i) * a.p_basis()[i];
    return v;
  };
  for (std::uint64_t s = 0; s < 40; ++s) {
    const auto c = random_p(3 * s), v = random_p(3 * s + 1), w = random_p(3 * s + 2);
    CHECK(a.killing_form(jacobi_operator(a, c, v), v) <= 0);
    CHECK(a.killing_form(jacobi_operator(a, c, v), w) == a.killing_form(v, jacobi_operator(a, c, w)));
  }
}

TEST_CASE("Killing form is ad-invariant on random rational triples") {
  const auto e = build_space("su21");
  const auto& a = *e.algebra;
  const CounterRng rng(11);
  auto random_g = [&](std::uint64_t stream) {
    ExactVector v(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) v[i] = rng.small_rational(stream, i);
    return v;
  };
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const auto x = random_g(3 * s), y = random_g(3 * s + 1), z = random_g(3 * s + 2);
    REQUIRE(a.killing_form(a.bracket(z, x), y) + a.killing_form(x, a.bracket(z, y)) == 0);
  }
}

TEST_CASE("Killing form matches the trace-form multiple of each realization") {
  // B = 2N tr(XY) on su(p,q) and sl(N,R); B = (N-2) tr(XY) on so(p,q).
  struct Case {
    const char* id;
    int factor;
  };
  for (const Case c : {Case{"su21", 6}, Case{"su31", 8}, Case{"sl3r", 6}, Case{"so31", 2}, Case{"sl2r", 4}}) {
    CAPTURE(c.id);
    const auto e = build_space(c.id);
    const auto& a = *e.algebra;
    for (std::size_t i = 0; i < a.dim(); ++i) {
      for (std::size_t j = 0; j < a.dim(); ++j) {
        const auto x = tvtest::image(a, a.unit(i)), y = tvtest::image(a, a.unit(j));
        std::complex<double> tr = 0;
        for (std::size_t p = 0; p < x.size(); ++p)
          for (std::size_t q = 0; q < x.size(); ++q) tr += x[p][q] * y[q][p];
        CHECK(to_double(a.killing()(i, j)) == doctest::Approx(c.factor * tr.real()).epsilon(1e-12));
        CHECK(std::abs(tr.imag()) < 1e-12);
      }
    }
  }
}

TEST_CASE("bracket table reproduces matrix commutators") {
  for (const char* id : {"su21", "su31", "so31", "sl3r"}) {
    CAPTURE(id);
    const auto e = build_space(id);
    const auto& a = *e.algebra;
    for (std::size_t i = 0; i < a.dim(); ++i) {
      for (std::size_t j = 0; j < a.dim(); ++j) {
        const auto x = tvtest::image(a, a.unit(i)), y = tvtest::image(a, a.unit(j));
        const auto br = tvtest::image(a, a.bracket(a.unit(i), a.unit(j)));
        double err = 0;
        for (std::size_t p = 0; p < x.size(); ++p)
          for (std::size_t q = 0; q < x.size(); ++q) {
            std::complex<double> c = 0;
            for (std::size_t r = 0; r < x.size(); ++r) c += x[p][r] * y[r][q] - y[p][r] * x[r][q];
            err = std::max(err, std::abs(c - br[p][q]));
          }
        CHECK(err < 1e-12);
      }
    }
  }
}

TEST_CASE("catalog algebras validate with zero residuals") {
  for (const char* id : {"su21", "su31", "so31", "sl3r", "sl2r"}) {
    CAPTURE(id);
    const auto rep = validate_algebra(*build_space(id).algebra);
    CHECK(rep.passed());
    for (const auto& entry : rep.entries) CHECK(entry.residual == 0.0);
  }
}

TEST_CASE("cartan split and ad chains") {
  const auto e = build_space("sl3r");
  const auto& a = *e.algebra;
  const CounterRng rng(3);
  for (std::uint64_t s = 0; s < 20; ++s) {
    ExactVector v(a.dim()), y(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
      v[i] = rng.small_rational(2 * s, i);
      y[i] = rng.small_rational(2 * s + 1, i);
    }
    const auto parts = cartan_split(a, v);
    CHECK(parts.k_part + parts.p_part == v);
    CHECK(in_k(a, parts.k_part));
    CHECK(in_p(a, parts.p_part));
    const auto chain = ad_chain(a, y, 4, v);
    CHECK(chain[3] == a.bracket(y, a.bracket(y, a.bracket(y, v))));
    CHECK(ad_power(a, y, 4, v) == chain[4]);
  }
}

TEST_CASE("algebra file parses and round trips") {
  const auto parsed = parse_algebra_file(tvtest::fixture("sl2r.alg"));
  const auto hand = tvtest::sl2_by_hand();
  CHECK(parsed.name() == "sl2r");
  CHECK(parsed.labels() == hand->labels());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(parsed.bracket(parsed.unit(i), parsed.unit(j)) == hand->bracket(hand->unit(i), hand->unit(j)));
      CHECK(parsed.killing()(i, j) == hand->killing()(i, j));
    }
  REQUIRE(parsed.realization());

  const auto su = build_space("su21");
  const auto again = parse_algebra_text(format_algebra(*su.algebra), "su21.alg");
  CHECK(again.labels() == su.algebra->labels());
  CHECK(again.theta() == su.algebra->theta());
  REQUIRE(again.realization());
  CHECK(again.realization()->images.size() == su.algebra->dim());
  for (std::size_t k = 0; k < again.dim(); ++k) CHECK(again.realization()->images[k] == su.algebra->realization()->images[k]);
}

TEST_CASE("complex rational parsing") {
  CHECK(parse_complex_rational("i") == ComplexRational(Rational(0), Rational(1)));
  CHECK(parse_complex_rational("-i") == ComplexRational(Rational(0), Rational(-1)));
  CHECK(parse_complex_rational("1/2-3/4i") == ComplexRational(Rational(1, 2), Rational(-3, 4)));
  CHECK(parse_complex_rational("-2") == ComplexRational(Rational(-2), Rational(0)));
  CHECK_THROWS(parse_complex_rational("2j"));
}

TEST_CASE("algebra file errors carry positions and reports") {
  try {
    parse_algebra_file(tvtest::fixture("sl2r_bad_syntax.alg"));
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() > 0);
  }
  CHECK_THROWS_AS(parse_algebra_file(tvtest::fixture("empty.alg")), ParseError);
  try {
    parse_algebra_file(tvtest::fixture("sl2r_bad_jacobi.alg"));
    FAIL("expected a validation error");
  } catch (const AlgebraValidationError& e) {
    const auto* jac = e.report().find("jacobi");
    REQUIRE(jac);
    CHECK_FALSE(jac->passed);
    CHECK(jac->residual > 0);
    CHECK(std::string(e.what()).find("jacobi") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_algebra_text("[basis]\nH E\n[bracket]\nH Q -> 1 0\n[theta]\n-1 0\n0 -1\n"), ParseError);
}
