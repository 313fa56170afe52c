#include "transvector/geometry.hpp"

#include "transvector/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace transvector {

namespace {

Eigen::MatrixXd to_eigen(const DenseMatrix<double>& m) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  return out;
}

Eigen::VectorXd to_eigen(const FloatVector& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

FloatVector from_eigen(const Eigen::VectorXd& v) {
  std::vector<double> c(v.data(), v.data() + v.size());
  return FloatVector(std::move(c));
}

Eigen::Index ix(std::size_t i) { return static_cast<Eigen::Index>(i); }

}  // namespace

SymmetricSpaceModel::SymmetricSpaceModel(AlgebraPtr algebra) : alg_(std::move(algebra)) {
  if (!alg_) throw std::invalid_argument("SymmetricSpaceModel: null algebra");
  const auto& real = alg_->realization();
  if (!real) throw std::invalid_argument("SymmetricSpaceModel: algebra " + alg_->name() + " has no matrix realization");
  n_ = real->size;
  const std::size_t d = alg_->dim();
  real_images_.resize(ix(2 * n_ * n_), ix(d));
  for (std::size_t k = 0; k < d; ++k) {
    const auto& src = real->images[k];
    ComplexMatrix m(ix(n_), ix(n_));
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        const std::complex<double> z(to_double(src(i, j).re), to_double(src(i, j).im));
        m(ix(i), ix(j)) = z;
        real_images_(ix(2 * (i * n_ + j)), ix(k)) = z.real();
        real_images_(ix(2 * (i * n_ + j) + 1), ix(k)) = z.imag();
      }
    }
    images_.push_back(std::move(m));
  }
  image_pinv_ = real_images_.completeOrthogonalDecomposition().pseudoInverse();

  const auto& pb = alg_->p_basis();
  p_basis_.resize(ix(d), ix(pb.size()));
  for (std::size_t j = 0; j < pb.size(); ++j)
    for (std::size_t i = 0; i < d; ++i) p_basis_(ix(i), ix(j)) = to_double(pb[j][i]);
  p_pinv_ = (p_basis_.transpose() * p_basis_).ldlt().solve(p_basis_.transpose());

  Eigen::MatrixXd killing(ix(d), ix(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) killing(ix(i), ix(j)) = to_double(alg_->killing()(i, j));
  gram_ = p_basis_.transpose() * killing * p_basis_;

  for (std::size_t j = 0; j < pb.size(); ++j) ad_p_.push_back(to_eigen(alg_->ad_matrix(to_float(pb[j]))));

  const Eigen::MatrixXd p_flat = real_images_ * p_basis_;
  p_image_pinv_l_ = Eigen::MatrixXd(p_flat.completeOrthogonalDecomposition().pseudoInverse()).cast<long double>();
  for (std::size_t j = 0; j < pb.size(); ++j) {
    ComplexMatrixL m = ComplexMatrixL::Zero(ix(n_), ix(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < n_; ++k)
        m(ix(i), ix(k)) = {static_cast<long double>(p_flat(ix(2 * (i * n_ + k)), ix(j))),
                           static_cast<long double>(p_flat(ix(2 * (i * n_ + k) + 1), ix(j)))};
    p_images_l_.push_back(std::move(m));
  }
}

VectorL SymmetricSpaceModel::project_product(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
  if (static_cast<std::size_t>(a.size()) != p_dim() || static_cast<std::size_t>(b.size()) != p_dim()) {
    throw std::invalid_argument("project_product: dimension mismatch");
  }
  auto matrix = [&](const Eigen::VectorXd& c) {
    ComplexMatrixL m = ComplexMatrixL::Zero(ix(n_), ix(n_));
    for (std::size_t j = 0; j < p_dim(); ++j)
      if (c(ix(j)) != 0.0) m += static_cast<long double>(c(ix(j))) * p_images_l_[j];
    return m;
  };
  const ComplexMatrixL g = expm<long double>(matrix(a)) * expm<long double>(matrix(b));
  const ComplexMatrixL half_log = logm_hpd<long double>(ComplexMatrixL(g * g.adjoint())) / 2.0L;
  VectorL flat(ix(2 * n_ * n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      flat(ix(2 * (i * n_ + j))) = half_log(ix(i), ix(j)).real();
      flat(ix(2 * (i * n_ + j) + 1)) = half_log(ix(i), ix(j)).imag();
    }
  VectorL c = p_image_pinv_l_ * flat;
  ComplexMatrixL back = ComplexMatrixL::Zero(ix(n_), ix(n_));
  for (std::size_t j = 0; j < p_dim(); ++j) back += c(ix(j)) * p_images_l_[j];
  if (!((back - half_log).norm() <= 1e-8L * (1.0L + half_log.norm()))) {
    throw NumericalBreakdown("project_product: polar part leaves p");
  }
  return c;
}

Eigen::VectorXd SymmetricSpaceModel::p_coords(const FloatVector& v) const {
  if (v.size() != alg_->dim()) throw std::invalid_argument("p_coords: dimension mismatch");
  return p_pinv_ * to_eigen(v);
}

FloatVector SymmetricSpaceModel::from_p_coords(const Eigen::VectorXd& c) const {
  if (static_cast<std::size_t>(c.size()) != p_dim()) throw std::invalid_argument("from_p_coords: dimension mismatch");
  return from_eigen(p_basis_ * c);
}

ComplexMatrix SymmetricSpaceModel::matrix_of(const FloatVector& v) const {
  if (v.size() != alg_->dim()) throw std::invalid_argument("matrix_of: dimension mismatch");
  ComplexMatrix m = ComplexMatrix::Zero(ix(n_), ix(n_));
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] != 0.0) m += v[k] * images_[k];
  return m;
}

ComplexMatrix SymmetricSpaceModel::matrix_of_p(const Eigen::VectorXd& c) const { return matrix_of(from_p_coords(c)); }

FloatVector SymmetricSpaceModel::algebra_coords(const ComplexMatrix& m) const {
  if (static_cast<std::size_t>(m.rows()) != n_ || static_cast<std::size_t>(m.cols()) != n_) {
    throw std::invalid_argument("algebra_coords: matrix size mismatch");
  }
  Eigen::VectorXd flat(ix(2 * n_ * n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      flat(ix(2 * (i * n_ + j))) = m(ix(i), ix(j)).real();
      flat(ix(2 * (i * n_ + j) + 1)) = m(ix(i), ix(j)).imag();
    }
  return from_eigen(image_pinv_ * flat);
}

double SymmetricSpaceModel::b_norm(const Eigen::VectorXd& c) const { return std::sqrt(std::max(0.0, b_inner(c, c))); }

Eigen::VectorXd SymmetricSpaceModel::cartan_project(const ComplexMatrix& g) const {
  // theta(g)^{-1} = g^dagger for the inverse-adjoint involution.
  const ComplexMatrix half_log = logm_hpd(g * g.adjoint()) / 2.0;
  const auto coords = algebra_coords(half_log);
  const Eigen::VectorXd c = p_coords(coords);
  const double err = (matrix_of_p(c) - half_log).norm();
  if (!(err <= 1e-8 * (1.0 + half_log.norm()))) {
    throw NumericalBreakdown("cartan_project: polar part leaves p (g is not in the realized group)");
  }
  return c;
}

double SymmetricSpaceModel::distance(const SpacePoint& a, const SpacePoint& b) const {
  const ComplexMatrix g = a.representative.partialPivLu().solve(b.representative);
  return b_norm(cartan_project(g));
}

Eigen::MatrixXd SymmetricSpaceModel::ad_squared(const Eigen::VectorXd& c) const {
  if (static_cast<std::size_t>(c.size()) != p_dim()) throw std::invalid_argument("ad_squared: dimension mismatch");
  Eigen::MatrixXd ad = Eigen::MatrixXd::Zero(ix(alg_->dim()), ix(alg_->dim()));
  for (std::size_t i = 0; i < p_dim(); ++i)
    if (c(ix(i)) != 0.0) ad += c(ix(i)) * ad_p_[i];
  return p_pinv_ * (ad * (ad * p_basis_));
}

Eigen::MatrixXd SymmetricSpaceModel::exp_differential(const Eigen::VectorXd& c, unsigned max_terms) const {
  const Eigen::MatrixXd m = ad_squared(c);
  const auto p = ix(p_dim());
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(p, p);
  Eigen::MatrixXd term = s;
  for (unsigned k = 1; k <= max_terms; ++k) {
    term = term * m / static_cast<double>((2 * k) * (2 * k + 1));
    s += term;
    if (term.norm() <= 1e-16 * s.norm()) return s;
  }
  throw NumericalBreakdown("exp_differential: series did not converge; |P| too large");
}

Eigen::MatrixXd SymmetricSpaceModel::metric(const Eigen::VectorXd& c) const {
  const Eigen::MatrixXd s = exp_differential(c);
  return s.transpose() * gram_ * s;
}

double SymmetricSpaceModel::pullback_metric(const Eigen::VectorXd& c, const Eigen::VectorXd& u,
                                            const Eigen::VectorXd& v) const {
  return u.dot(metric(c) * v);
}

// ---------------------------------------------------------------------------

std::size_t ImmersionSpec::node_count() const {
  std::size_t n = t_axis.steps;
  for (const auto& a : y_axes) n *= a.steps;
  return n;
}

std::pair<double, Eigen::VectorXd> ImmersionSpec::node(std::size_t i) const {
  Eigen::VectorXd y(ix(y_axes.size()));
  for (std::size_t k = y_axes.size(); k-- > 0;) {
    y(ix(k)) = y_axes[k].value(i % y_axes[k].steps);
    i /= y_axes[k].steps;
  }
  return {t_axis.value(i), y};
}

ImmersionSpec make_immersion_spec(ModelPtr model, const ExactSubspace& s, const ExactVector& x, std::size_t steps,
                                  double half_width) {
  if (!model) throw std::invalid_argument("make_immersion_spec: null model");
  if (model->algebra_ptr() != s.algebra_ptr()) throw std::invalid_argument("make_immersion_spec: s lives in another algebra");
  const auto& alg = model->algebra();
  if (!is_lie_triple_system(s).holds) throw std::invalid_argument("make_immersion_spec: s is not a Lie triple system");
  if (x.is_zero()) throw std::invalid_argument("make_immersion_spec: X is zero");
  if (!in_p(alg, x)) throw std::invalid_argument("make_immersion_spec: X is not in p");
  for (const auto& v : s.basis()) {
    if (sgn(alg.killing_form(x, v)) != 0) throw std::invalid_argument("make_immersion_spec: X is not B-orthogonal to s");
  }
  if (steps == 0) throw std::invalid_argument("make_immersion_spec: empty grid");

  ImmersionSpec spec;
  spec.model = model;
  for (const auto& v : s.basis()) {
    Eigen::VectorXd c = model->p_coords(to_float(v));
    for (const auto& f : spec.s_frame) c -= model->b_inner(f, c) * f;
    c /= model->b_norm(c);
    spec.s_frame.push_back(std::move(c));
  }
  spec.x = model->p_coords(to_float(x));
  spec.t_axis = {-half_width, half_width, steps};
  spec.y_axes.assign(s.dim(), GridAxis{-half_width, half_width, steps});
  return spec;
}

namespace {

Eigen::VectorXd s_vector(const ImmersionSpec& spec, const Eigen::VectorXd& y) {
  if (static_cast<std::size_t>(y.size()) != spec.s_dim()) throw std::invalid_argument("immersion: wrong number of s coordinates");
  Eigen::VectorXd c = Eigen::VectorXd::Zero(ix(spec.model->p_dim()));
  for (std::size_t j = 0; j < spec.s_dim(); ++j) c += y(ix(j)) * spec.s_frame[j];
  return c;
}

ComplexMatrix immersion_matrix(const ImmersionSpec& spec, double t, const Eigen::VectorXd& y) {
  const auto& m = *spec.model;
  return m.exp_p(t * spec.x) * m.exp_p(s_vector(spec, y));
}

}  // namespace

Eigen::VectorXd immersion_coords(const ImmersionSpec& spec, double t, const Eigen::VectorXd& y) {
  return spec.model->cartan_project(immersion_matrix(spec, t, y));
}

VectorL immersion_coords_extended(const ImmersionSpec& spec, double t, const Eigen::VectorXd& y) {
  return spec.model->project_product(t * spec.x, s_vector(spec, y));
}

SpacePoint immersion_point(const ImmersionSpec& spec, double t, const Eigen::VectorXd& y) {
  return spec.model->point(immersion_coords(spec, t, y));
}

MeanCurvature mean_curvature_estimate(const ImmersionSpec& spec, double t, const Eigen::VectorXd& y, double h,
                                      bool include_t) {
  if (!(h > 0.0)) throw std::invalid_argument("mean_curvature_estimate: step must be positive");
  const auto& model = *spec.model;
  const std::size_t k = spec.s_dim();
  const std::size_t m = k + (include_t ? 1 : 0);
  if (m == 0) throw std::invalid_argument("mean_curvature_estimate: zero-dimensional immersion");
  const auto p = ix(model.p_dim());

  auto eval = [&](const Eigen::VectorXd& du) {
    double tt = t;
    Eigen::VectorXd yy = y;
    std::size_t off = 0;
    if (include_t) {
      tt += du(0);
      off = 1;
    }
    for (std::size_t j = 0; j < k; ++j) yy(ix(j)) += du(ix(j + off));
    return immersion_coords_extended(spec, tt, yy);
  };
  auto e = [&](std::size_t a) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(ix(m));
    v(ix(a)) = h;
    return v;
  };

  // Differences are formed in extended precision before rounding to double.
  const long double hl = h;
  const VectorL f0l = eval(Eigen::VectorXd::Zero(ix(m)));
  const Eigen::VectorXd f0 = f0l.cast<double>();
  std::vector<VectorL> plus(m), minus(m);
  Eigen::MatrixXd tangent(p, ix(m));
  for (std::size_t a = 0; a < m; ++a) {
    plus[a] = eval(e(a));
    minus[a] = eval(-e(a));
    tangent.col(ix(a)) = ((plus[a] - minus[a]) / (2 * hl)).cast<double>();
  }
  std::vector<std::vector<Eigen::VectorXd>> second(m, std::vector<Eigen::VectorXd>(m));
  for (std::size_t a = 0; a < m; ++a) {
    second[a][a] = ((plus[a] - 2.0L * f0l + minus[a]) / (hl * hl)).cast<double>();
    for (std::size_t b = a + 1; b < m; ++b) {
      const VectorL pp = eval(e(a) + e(b));
      const VectorL pm = eval(e(a) - e(b));
      const VectorL mp = eval(-e(a) + e(b));
      const VectorL mm = eval(-e(a) - e(b));
      second[a][b] = ((pp - pm - mp + mm) / (4 * hl * hl)).cast<double>();
      second[b][a] = second[a][b];
    }
  }

  // Christoffel symbols of the ambient metric at f0.
  const Eigen::MatrixXd g = model.metric(f0);
  // Fourth-order central stencil for the metric derivatives.
  const double hg = 2e-3;
  std::vector<Eigen::MatrixXd> dg(static_cast<std::size_t>(p));
  for (Eigen::Index l = 0; l < p; ++l) {
    Eigen::VectorXd step = Eigen::VectorXd::Zero(p);
    step(l) = hg;
    dg[static_cast<std::size_t>(l)] = (8.0 * (model.metric(f0 + step) - model.metric(f0 - step)) -
                                       (model.metric(f0 + 2.0 * step) - model.metric(f0 - 2.0 * step))) /
                                      (12.0 * hg);
  }
  const auto g_ldlt = g.ldlt();
  auto christoffel = [&](const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    // Gamma_{l}(u, v) = 1/2 (d_u G v + d_v G u - grad_l (u^T G v)), then raise l.
    Eigen::MatrixXd du = Eigen::MatrixXd::Zero(p, p);
    Eigen::MatrixXd dv = Eigen::MatrixXd::Zero(p, p);
    Eigen::VectorXd grad(p);
    for (Eigen::Index l = 0; l < p; ++l) {
      du += u(l) * dg[static_cast<std::size_t>(l)];
      dv += v(l) * dg[static_cast<std::size_t>(l)];
      grad(l) = u.dot(dg[static_cast<std::size_t>(l)] * v);
    }
    const Eigen::VectorXd lowered = 0.5 * (du * v + dv * u - grad);
    return Eigen::VectorXd(g_ldlt.solve(lowered));
  };

  const Eigen::MatrixXd induced = tangent.transpose() * g * tangent;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(induced);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 1e-12 * hi)) throw NumericalBreakdown("mean_curvature_estimate: induced metric is degenerate");
  const Eigen::MatrixXd induced_inv = induced.inverse();

  auto normal_part = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return v - tangent * (induced_inv * (tangent.transpose() * (g * v)));
  };

  Eigen::VectorXd mean = Eigen::VectorXd::Zero(p);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const double w = induced_inv(ix(a), ix(b));
      if (w == 0.0) continue;
      const Eigen::VectorXd acc = second[a][b] + christoffel(tangent.col(ix(a)), tangent.col(ix(b)));
      mean += w * normal_part(acc);
    }
  }
  return {mean, std::sqrt(std::max(0.0, mean.dot(g * mean)))};
}

CurvatureReport curvature_report(const ImmersionSpec& spec, bool include_t) {
  CurvatureReport rep;
  rep.step = spec.h;
  struct NodeResult {
    CurvatureSample sample;
    double error = 0.0;
  };
  const auto results = parallel_map(spec.node_count(), [&](std::size_t i) {
    const auto [t, y] = spec.node(i);
    const MeanCurvature coarse = mean_curvature_estimate(spec, t, y, spec.h, include_t);
    const MeanCurvature fine = mean_curvature_estimate(spec, t, y, spec.h / 2, include_t);
    const Eigen::MatrixXd g = spec.model->metric(immersion_coords(spec, t, y));
    const Eigen::VectorXd diff = coarse.vector - fine.vector;
    NodeResult r;
    r.sample.t = t;
    r.sample.y = y;
    if (spec.richardson) {
      const Eigen::VectorXd v = (4.0 * fine.vector - coarse.vector) / 3.0;
      r.sample.h = {v, std::sqrt(std::max(0.0, v.dot(g * v)))};
    } else {
      r.sample.h = coarse;
    }
    r.error = std::sqrt(std::max(0.0, diff.dot(g * diff)));
    return r;
  });
  for (const auto& r : results) {
    rep.max_norm = std::max(rep.max_norm, r.sample.h.norm);
    rep.discretization_error = std::max(rep.discretization_error, r.error);
    rep.samples.push_back(r.sample);
  }
  return rep;
}

std::vector<Eigen::VectorXd> y_grid(const ImmersionSpec& spec) {
  std::size_t n = 1;
  for (const auto& a : spec.y_axes) n *= a.steps;
  std::vector<Eigen::VectorXd> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = i;
    Eigen::VectorXd y(ix(spec.y_axes.size()));
    for (std::size_t k = spec.y_axes.size(); k-- > 0;) {
      y(ix(k)) = spec.y_axes[k].value(r % spec.y_axes[k].steps);
      r /= spec.y_axes[k].steps;
    }
    out.push_back(std::move(y));
  }
  return out;
}

DistanceLawReport distance_law_check(const ImmersionSpec& spec, const std::vector<double>& t_samples,
                                     const std::vector<Eigen::VectorXd>& y_samples, double slack) {
  const auto& model = *spec.model;
  DistanceLawReport rep;
  rep.slack = slack;
  rep.speed = model.b_norm(spec.x);
  const SpacePoint o = model.origin();
  const Eigen::VectorXd zero_y = Eigen::VectorXd::Zero(ix(spec.s_dim()));

  for (double t : t_samples) {
    const double d = model.distance(o, immersion_point(spec, t, zero_y));
    const double res = std::abs(d - std::abs(t) * rep.speed);
    rep.geodesic_residual = std::max(rep.geodesic_residual, res);
    if (res > 1e-9 * std::max(1.0, std::abs(t) * rep.speed)) rep.geodesic_ok = false;
  }

  std::vector<SpacePoint> s_points;
  for (const auto& y : y_samples) s_points.push_back(immersion_point(spec, 0.0, y));

  struct Separation {
    double margin = std::numeric_limits<double>::infinity();
    double foot_gap = 0.0;
  };
  const auto seps = parallel_map(t_samples.size(), [&](std::size_t ti) {
    Separation sep;
    const double t = t_samples[ti];
    const double target = std::abs(t) * rep.speed;
    auto dist_to_samples = [&](const SpacePoint& q) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& sp : s_points) best = std::min(best, model.distance(q, sp));
      return best;
    };
    for (const auto& y : y_samples) sep.margin = std::min(sep.margin, dist_to_samples(immersion_point(spec, t, y)) - target);
    sep.foot_gap = dist_to_samples(immersion_point(spec, t, zero_y)) - target;
    return sep;
  });
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (const auto& s : seps) {
    rep.min_margin = std::min(rep.min_margin, s.margin);
    rep.foot_gap = std::max(rep.foot_gap, s.foot_gap);
  }
  if (t_samples.empty()) rep.min_margin = 0.0;
  if (rep.min_margin < -slack) rep.separation_ok = false;

  std::vector<double> ts = t_samples;
  ts.push_back(0.0);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  const auto violations = parallel_map(y_samples.size(), [&](std::size_t qi) {
    std::vector<double> f;
    for (double t : ts) f.push_back(model.distance(o, immersion_point(spec, t, y_samples[qi])));
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
      const double tol = 1e-12 * (1.0 + std::max(f[i], f[i + 1]));
      // Nonincreasing up to t = 0, nondecreasing after.
      const double v = ts[i + 1] <= 0.0 ? f[i + 1] - f[i] : f[i] - f[i + 1];
      if (v > tol) worst = std::max(worst, v);
    }
    return worst;
  });
  for (double v : violations) rep.monotonicity_violation = std::max(rep.monotonicity_violation, v);
  rep.minimum_at_zero_ok = rep.monotonicity_violation == 0.0;
  return rep;
}

double geodesic_speed_residual(const SymmetricSpaceModel& m, const Eigen::VectorXd& v, const std::vector<double>& s) {
  const SpacePoint o = m.origin();
  const double speed = m.b_norm(v);
  double worst = 0.0;
  for (double x : s) worst = std::max(worst, std::abs(m.distance(o, m.point_of(m.exp_p(x * v))) - std::abs(x) * speed));
  return worst;
}

double chart_roundtrip_residual(const SymmetricSpaceModel& m, const Eigen::VectorXd& p) {
  return m.b_norm(m.cartan_project(m.exp_p(p)) - p);
}

double transvection_isometry_residual(const SymmetricSpaceModel& m, const Eigen::VectorXd& x, double t,
                                      const SpacePoint& q1, const SpacePoint& q2) {
  const ComplexMatrix psi = m.exp_p(t * x);
  const SpacePoint a = m.point_of(psi * q1.representative);
  const SpacePoint b = m.point_of(psi * q2.representative);
  return std::abs(m.distance(a, b) - m.distance(q1, q2));
}

bool distance_nondecreasing(const SymmetricSpaceModel& m, const Eigen::VectorXd& v, const Eigen::VectorXd& w,
                            const std::vector<double>& s) {
  double prev = -1.0;
  for (double x : s) {
    const double d = m.distance(m.point(x * v), m.point(x * w));
    if (d < prev - 1e-12 * (1.0 + prev)) return false;
    prev = d;
  }
  return true;
}

double transported_normal_pairing(const ImmersionSpec& spec, const Eigen::VectorXd& y) {
  const auto& m = *spec.model;
  const Eigen::VectorXd yc = s_vector(spec, y);
  const ComplexMatrix z = m.exp_p(-yc) * m.matrix_of_p(spec.x) * m.exp_p(yc);
  const FloatVector zc = m.algebra_coords(z);
  const Eigen::VectorXd zp = m.p_coords(cartan_split(m.algebra(), zc).p_part);
  double worst = 0.0;
  for (const auto& f : spec.s_frame) worst = std::max(worst, std::abs(m.b_inner(zp, f)));
  return worst;
}

BisectorReport bisector_equidistance(const ImmersionSpec& spec, const ComplexStructure& j, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("bisector_equidistance: r must be positive");
  const auto& m = *spec.model;
  const Eigen::VectorXd jx = m.p_coords(j.apply(m.from_p_coords(spec.x)));
  const SpacePoint zp = m.point(r * jx);
  const SpacePoint zm = m.point(-r * jx);
  BisectorReport rep;
  rep.r = r;
  rep.nodes = spec.node_count();
  const auto diffs = parallel_map(rep.nodes, [&](std::size_t i) {
    const auto [t, y] = spec.node(i);
    const SpacePoint q = immersion_point(spec, t, y);
    return std::abs(m.distance(q, zp) - m.distance(q, zm));
  });
  rep.worst_y = Eigen::VectorXd::Zero(ix(spec.s_dim()));
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    if (diffs[i] > rep.max_difference || i == 0) {
      rep.max_difference = diffs[i];
      std::tie(rep.worst_t, rep.worst_y) = spec.node(i);
    }
  }
  return rep;
}

}  // namespace transvector
