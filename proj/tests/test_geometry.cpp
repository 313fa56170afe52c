#include "support.hpp"
#include "transvector/extension.hpp"
#include "transvector/geometry.hpp"
#include "transvector/report.hpp"

#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <fstream>
#include <random>

using namespace transvector;
using tvtest::vec;

namespace {

ComplexMatrix random_complex(std::mt19937_64& gen, int n, double scale) {
  std::normal_distribution<double> d(0.0, scale);
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = {d(gen), d(gen)};
  return m;
}

ModelPtr model_of(const CatalogEntry& e) { return std::make_shared<const SymmetricSpaceModel>(e.algebra); }

Eigen::VectorXd coords(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

ImmersionSpec spec_for(const CatalogEntry& e, const ModelPtr& model, const char* pair, std::uint64_t seed = 1) {
  const auto inst = build_pair(e, pair);
  auto x = sample_normals(inst.normal, 1, seed).front();
  const double b = to_double(e.algebra->killing_form(x, x));
  x *= Rational(std::lround(1024.0 / std::sqrt(b)), 1024);
  return make_immersion_spec(model, inst.s, x);
}

}  // namespace

TEST_CASE("expm agrees with Eigen's matrix exponential") {
  std::mt19937_64 gen(42);
  for (double scale : {1e-3, 0.1, 1.0, 4.0}) {
    for (int n : {2, 3, 5}) {
      const ComplexMatrix a = random_complex(gen, n, scale);
      const ComplexMatrix ours = expm(a);
      const ComplexMatrix ref = a.exp();
      CHECK((ours - ref).norm() <= 1e-12 * ref.norm());
    }
  }
  const ComplexMatrix zero = ComplexMatrix::Zero(3, 3);
  CHECK((expm(zero) - ComplexMatrix::Identity(3, 3)).norm() < 1e-15);
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1.5;
  d(1, 1) = {0.0, 0.5};
  const ComplexMatrix ed = expm(d);
  CHECK(std::abs(ed(0, 0) - std::exp(1.5)) < 1e-14 * std::exp(1.5));
  CHECK(std::abs(ed(1, 1) - std::exp(std::complex<double>(0.0, 0.5))) < 1e-15);
}

TEST_CASE("extended precision expm agrees with double") {
  std::mt19937_64 gen(3);
  const ComplexMatrix a = random_complex(gen, 4, 1.0);
  const ComplexMatrixL al = a.cast<std::complex<long double>>();
  const ComplexMatrix back = expm<long double>(al).cast<std::complex<double>>();
  CHECK((back - expm(a)).norm() <= 1e-13 * back.norm());
}

TEST_CASE("logm inverts expm on Hermitian matrices") {
  std::mt19937_64 gen(9);
  for (double scale : {0.01, 0.5, 1.0}) {
    const ComplexMatrix r = random_complex(gen, 4, scale);
    const ComplexMatrix h = (r + r.adjoint()) / 2.0;
    CHECK((logm_hpd(expm(h)) - h).norm() <= 1e-12 * (1.0 + h.norm()));
  }
  ComplexMatrix indefinite = ComplexMatrix::Identity(2, 2);
  indefinite(1, 1) = -1.0;
  CHECK_THROWS_AS(logm_hpd(indefinite), NumericalBreakdown);
}

TEST_CASE("real hyperbolic distances match the hyperboloid law of cosines") {
  // so(3,1): B = 2 tr(XY), so each P_a has B-length 2 and d_B = 2 d_hyperboloid.
  const auto e = build_space("so31");
  const auto model = model_of(e);
  REQUIRE(model->p_dim() == 3);
  for (double a : {0.1, 0.7, 1.5}) {
    for (double b : {0.2, 1.0, 2.0}) {
      const auto q1 = model->point(coords({a, 0.0, 0.0}));
      const auto q2 = model->point(coords({0.0, b, 0.0}));
      const double expect = 2.0 * std::acosh(std::cosh(a) * std::cosh(b));
      CHECK(model->distance(q1, q2) == doctest::Approx(expect).epsilon(1e-12));
      CHECK(model->distance(model->origin(), q1) == doctest::Approx(2.0 * a).epsilon(1e-13));
    }
  }
}

TEST_CASE("distance is a metric on sampled points") {
  const auto e = build_space("su21");
  const auto model = model_of(e);
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  auto random_point = [&] { return model->point(coords({u(gen), u(gen), u(gen), u(gen)})); };
  for (int k = 0; k < 20; ++k) {
    const auto p = random_point(), q = random_point(), r = random_point();
    const double pq = model->distance(p, q), qp = model->distance(q, p);
    CHECK(pq == doctest::Approx(qp).epsilon(1e-12));
    CHECK(model->distance(p, p) < 1e-12);
    CHECK(model->distance(p, r) <= pq + model->distance(q, r) + 1e-12);
  }
}

TEST_CASE("pullback metric matches the first-order growth of distance") {
  const auto e = build_space("su21");
  const auto model = model_of(e);
  const Eigen::VectorXd c = coords({0.4, -0.3, 0.2, 0.5});
  const Eigen::VectorXd v = coords({0.3, 0.1, -0.7, 0.2});
  const double eps = 1e-6;
  const double speed = model->distance(model->point(c - eps * v), model->point(c + eps * v)) / (2 * eps);
  CHECK(speed == doctest::Approx(std::sqrt(model->pullback_metric(c, v, v))).epsilon(1e-7));
  CHECK((model->metric(Eigen::VectorXd::Zero(4)) - model->gram()).norm() < 1e-15);
}

TEST_CASE("geodesic, chart and isometry invariants") {
  const auto e = build_space("su21");
  const auto model = model_of(e);
  const Eigen::VectorXd v = coords({0.3, -0.2, 0.5, 0.1});
  const Eigen::VectorXd unit = v / model->b_norm(v);
  CHECK(geodesic_speed_residual(*model, unit, {-4, -2, -0.5, 0.5, 1, 2, 4}) <= 1e-9);
  for (double s : {0.5, 1.0, 2.0, 4.0}) CHECK(chart_roundtrip_residual(*model, (s / 2.0) * unit) <= 1e-12);
  const auto q1 = model->point(coords({0.1, 0.2, -0.3, 0.0}));
  const auto q2 = model->point(coords({-0.4, 0.0, 0.2, 0.3}));
  for (double t : {-1.0, 0.5, 2.0}) CHECK(transvection_isometry_residual(*model, unit, t, q1, q2) <= 1e-9);
  CHECK(distance_nondecreasing(*model, unit, coords({0.0, 1.0, 0.0, 0.0}), {0.0, 0.5, 1.0, 2.0, 3.0}));
}

TEST_CASE("cartan projection rejects matrices outside the group") {
  const auto model = model_of(build_space("su21"));
  ComplexMatrix g = ComplexMatrix::Identity(3, 3);
  g(0, 0) = 2.0;
  CHECK_THROWS_AS(model->cartan_project(g), NumericalBreakdown);
}

TEST_CASE("immersion spec preconditions") {
  const auto e = build_space("su21");
  const auto model = model_of(e);
  const auto inst = build_pair(e, "real-form");
  CHECK_THROWS_AS(make_immersion_spec(model, inst.s, inst.s.basis()[0]), std::invalid_argument);
  CHECK_THROWS_AS(make_immersion_spec(model, inst.s, e.algebra->zero()), std::invalid_argument);
  CHECK_THROWS_AS(make_immersion_spec(model, inst.s, e.algebra->k_basis()[0]), std::invalid_argument);
  const auto spec = make_immersion_spec(model, inst.s, inst.normal.basis()[0], 3, 0.25);
  CHECK(spec.node_count() == 27);
  CHECK(spec.codimension() == 2);
  for (std::size_t i = 0; i < spec.s_dim(); ++i)
    for (std::size_t j = 0; j < spec.s_dim(); ++j)
      CHECK(model->b_inner(spec.s_frame[i], spec.s_frame[j]) == doctest::Approx(i == j ? 1.0 : 0.0));
  CHECK((immersion_coords(spec, 0.0, Eigen::VectorXd::Zero(2))).norm() < 1e-15);
}

TEST_CASE("minimal extensions have vanishing mean curvature") {
  const auto e = build_space("su21");
  const auto model = model_of(e);
  for (const char* pair : {"complex-hyperplane", "real-form"}) {
    CAPTURE(pair);
    const auto spec = spec_for(e, model, pair);
    const auto rep = curvature_report(spec);
    CHECK(rep.samples.size() == 125);
    CHECK(rep.max_norm <= 1e-4);
    CHECK(curvature_report(spec, false).max_norm <= 1e-5);
    // The mean curvature vector is normal to the immersion.
    const auto& s = rep.samples[17];
    const double h = 1e-4;
    const Eigen::VectorXd dt = (immersion_coords(spec, s.t + h, s.y) - immersion_coords(spec, s.t - h, s.y)) / (2 * h);
    const Eigen::MatrixXd g = model->metric(immersion_coords(spec, s.t, s.y));
    CHECK(std::abs(dt.dot(g * s.h.vector)) <= 1e-9);
  }
}

TEST_CASE("a failing pair gives a visibly non-minimal extension") {
  const auto e = build_space("sl3r");
  const auto model = model_of(e);
  const auto inst = build_pair(e, "symmetric-unit");
  const auto x = vec(*e.algebra, {{"H1", 1}, {"E13", 1}, {"E31", 1}});
  REQUIRE_FALSE(condition_holds(inst.s, x, 16, 1).holds);
  const auto spec = make_immersion_spec(model, inst.s, x);
  CHECK(curvature_report(spec).max_norm >= 1e-2);
  CHECK(curvature_report(spec, false).max_norm <= 1e-5);
}

TEST_CASE("distance law and transported normality on su(2,1)") {
  const auto e = build_space("su21");
  const auto model = model_of(e);
  for (const char* pair : {"complex-hyperplane", "real-form"}) {
    CAPTURE(pair);
    auto spec = spec_for(e, model, pair);
    auto coarse = spec;
    for (auto& a : coarse.y_axes) a.steps = 3;
    const auto ys = y_grid(coarse);
    CHECK(ys.size() == 9);
    const auto rep = distance_law_check(spec, {-1, -0.5, -0.25, 0.25, 0.5, 1}, ys);
    CHECK(rep.geodesic_ok);
    CHECK(rep.separation_ok);
    CHECK(rep.minimum_at_zero_ok);
    CHECK(rep.geodesic_residual <= 1e-9);
    for (const auto& y : ys) CHECK(transported_normal_pairing(spec, y) <= 1e-8);
  }
}

TEST_CASE("complex hyperplane extension is a bisector") {
  const auto e = build_space("su21");
  const auto model = model_of(e);
  auto spec = spec_for(e, model, "complex-hyperplane");
  spec.t_axis.steps = 7;
  for (auto& a : spec.y_axes) a.steps = 7;
  const auto rep = bisector_equidistance(spec, *e.complex_structure, 0.5);
  CHECK(rep.nodes == 343);
  CHECK(rep.max_difference <= 1e-8);
  auto control = spec_for(e, model, "real-form");
  control.t_axis.steps = 7;
  for (auto& a : control.y_axes) a.steps = 7;
  CHECK(bisector_equidistance(control, *e.complex_structure, 0.5).max_difference >= 1e-2);
}

TEST_CASE("point cloud export") {
  const auto e = build_space("su21");
  const auto model = model_of(e);
  auto spec = spec_for(e, model, "real-form");
  spec.t_axis.steps = 3;
  for (auto& a : spec.y_axes) a.steps = 2;
  const auto dir = std::filesystem::temp_directory_path();
  const auto csv = dir / "transvector_test_cloud.csv";
  const auto ply = dir / "transvector_test_cloud.ply";
  export_point_cloud(spec, csv, "csv");
  export_point_cloud(spec, ply, "ply");
  std::ifstream in(csv);
  std::string line;
  std::size_t rows = 0;
  std::getline(in, line);
  CHECK(line == "t,Y1,Y2,P1,P2,P3,P4,meanH");
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 12);
  std::ifstream pin(ply);
  std::getline(pin, line);
  CHECK(line == "ply");
  std::filesystem::remove(csv);
  std::filesystem::remove(ply);

  auto huge = spec;
  huge.t_axis.steps = 1000;
  for (auto& a : huge.y_axes) a.steps = 1000;
  const auto never = dir / "transvector_test_never.csv";
  CHECK_THROWS_AS(export_point_cloud(huge, never, "csv"), GridTooLarge);
  CHECK_FALSE(std::filesystem::exists(never));
}
