#pragma once

#include "transvector/matrix_functions.hpp"
#include "transvector/triple_systems.hpp"

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace transvector {

using VectorL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

/// A point of M = G/K in global normal coordinates over the p basis, with
/// the group representative exp(P).
struct SpacePoint {
  Eigen::VectorXd coords;
  ComplexMatrix representative;
};

/// Float model of the symmetric space built from a matrix realization.
/// Coordinates on p are taken against the algebra's p basis.
class SymmetricSpaceModel {
 public:
  explicit SymmetricSpaceModel(AlgebraPtr algebra);

  const StructuredLieAlgebra& algebra() const { return *alg_; }
  const AlgebraPtr& algebra_ptr() const { return alg_; }
  std::size_t p_dim() const { return static_cast<std::size_t>(p_basis_.cols()); }
  std::size_t matrix_size() const { return n_; }

  /// Gram matrix of B on the p basis.
  const Eigen::MatrixXd& gram() const { return gram_; }

  /// p coordinates of an algebra vector lying in p (and back).
  Eigen::VectorXd p_coords(const FloatVector& v) const;
  FloatVector from_p_coords(const Eigen::VectorXd& c) const;

  ComplexMatrix matrix_of(const FloatVector& v) const;
  ComplexMatrix matrix_of_p(const Eigen::VectorXd& c) const;
  /// Algebra coordinates of a matrix in the realized algebra (least squares).
  FloatVector algebra_coords(const ComplexMatrix& m) const;

  double b_norm(const Eigen::VectorXd& c) const;
  double b_inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const { return u.dot(gram_ * v); }

  ComplexMatrix exp_p(const Eigen::VectorXd& c) const { return expm(matrix_of_p(c)); }

  /// P with exp(P).o = g.o, from P = 1/2 log(g theta(g)^{-1}).
  Eigen::VectorXd cartan_project(const ComplexMatrix& g) const;

  /// cartan_project(exp(a) exp(b)) carried out in extended precision; used
  /// where finite differences of the chart need a low noise floor.
  VectorL project_product(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;

  SpacePoint point(const Eigen::VectorXd& c) const { return {c, exp_p(c)}; }
  SpacePoint point_of(const ComplexMatrix& g) const { return point(cartan_project(g)); }
  SpacePoint origin() const { return point(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p_dim()))); }

  double distance(const SpacePoint& a, const SpacePoint& b) const;

  /// ad_P^2 restricted to p, in p coordinates.
  Eigen::MatrixXd ad_squared(const Eigen::VectorXd& c) const;

  /// S(P) = sum_k (ad_P^2)^k / (2k+1)! on p. Throws NumericalBreakdown if
  /// the series has not converged to 1e-16 of its leading term after
  /// max_terms terms.
  Eigen::MatrixXd exp_differential(const Eigen::VectorXd& c, unsigned max_terms = 80) const;

  /// Matrix of g_P(u, v) = B(S(P)u, S(P)v) in p coordinates.
  Eigen::MatrixXd metric(const Eigen::VectorXd& c) const;
  double pullback_metric(const Eigen::VectorXd& c, const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;

 private:
  AlgebraPtr alg_;
  std::size_t n_ = 0;
  std::vector<ComplexMatrix> images_;
  Eigen::MatrixXd p_basis_;        // d x p, columns are the p basis
  Eigen::MatrixXd p_pinv_;         // p x d
  Eigen::MatrixXd real_images_;    // 2 n^2 x d, flattened images
  Eigen::MatrixXd image_pinv_;     // d x 2 n^2
  Eigen::MatrixXd gram_;
  std::vector<Eigen::MatrixXd> ad_p_;   // ad of each p basis vector, d x d
  std::vector<ComplexMatrixL> p_images_l_;
  Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> p_image_pinv_l_;   // p x 2 n^2
};

using ModelPtr = std::shared_ptr<const SymmetricSpaceModel>;

struct GridAxis {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t steps = 1;

  double value(std::size_t i) const {
    return steps <= 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
};

/// f(t, y) = exp(tX) exp(sum y_j s_j) . o, with s_j a B-orthonormal frame of s.
struct ImmersionSpec {
  ModelPtr model;
  std::vector<Eigen::VectorXd> s_frame;   // p coordinates, B-orthonormal
  Eigen::VectorXd x;                      // p coordinates
  unsigned truncation = 12;
  GridAxis t_axis{-0.5, 0.5, 5};
  std::vector<GridAxis> y_axes;
  double h = 1e-3;
  bool richardson = false;

  std::size_t s_dim() const { return s_frame.size(); }
  std::size_t codimension() const { return model->p_dim() - s_frame.size(); }
  std::size_t node_count() const;
  /// (t, y) of grid node i, t slowest.
  std::pair<double, Eigen::VectorXd> node(std::size_t i) const;
};

/// Validates s (Lie triple system in p), X (nonzero, in p, B-orthogonal to
/// s) and builds the spec with a default grid of `steps` per axis over
/// [-half_width, half_width].
ImmersionSpec make_immersion_spec(ModelPtr model, const ExactSubspace& s, const ExactVector& x,
                                  std::size_t steps = 5, double half_width = 0.5);

/// Normal coordinates of f(t, y).
Eigen::VectorXd immersion_coords(const ImmersionSpec& spec, double t, const Eigen::VectorXd& y);
VectorL immersion_coords_extended(const ImmersionSpec& spec, double t, const Eigen::VectorXd& y);
SpacePoint immersion_point(const ImmersionSpec& spec, double t, const Eigen::VectorXd& y);

struct MeanCurvature {
  Eigen::VectorXd vector;   // p coordinates
  double norm = 0.0;        // g-norm
};

struct CurvatureSample {
  double t = 0.0;
  Eigen::VectorXd y;
  MeanCurvature h;
};

struct CurvatureReport {
  std::vector<CurvatureSample> samples;
  double max_norm = 0.0;
  double step = 0.0;
  double discretization_error = 0.0;   // max |H(h) - H(h/2)|
};

/// Mean curvature of the immersion at (t, y) with central differences of
/// step h. With include_t = false the t direction is frozen (the S-only
/// immersion y -> exp(tX) exp(y) . o).
MeanCurvature mean_curvature_estimate(const ImmersionSpec& spec, double t, const Eigen::VectorXd& y, double h,
                                      bool include_t = true);

/// Mean curvature over the whole grid. Uses Richardson extrapolation of the
/// h and h/2 estimates when spec.richardson is set.
CurvatureReport curvature_report(const ImmersionSpec& spec, bool include_t = true);

struct DistanceLawReport {
  double speed = 0.0;                 // ||X||_B
  double geodesic_residual = 0.0;     // (i): max |d(o, gamma(t)) - |t| ||X|| |
  bool geodesic_ok = true;
  double min_margin = 0.0;            // (ii): min over t, x of d(psi_t(x), S-samples) - |t| ||X||
  double foot_gap = 0.0;              // (ii): max gap at x = p
  bool separation_ok = true;
  bool minimum_at_zero_ok = true;     // (iii)
  double monotonicity_violation = 0.0;
  double slack = 1e-3;
  bool passed() const { return geodesic_ok && separation_ok && minimum_at_zero_ok; }
};

DistanceLawReport distance_law_check(const ImmersionSpec& spec, const std::vector<double>& t_samples,
                                     const std::vector<Eigen::VectorXd>& y_samples, double slack = 1e-3);

/// Y grid of a spec's y axes, in order.
std::vector<Eigen::VectorXd> y_grid(const ImmersionSpec& spec);

// Invariant helpers.

/// max over s of |d(o, exp(s v).o) - |s| ||v||_B|.
double geodesic_speed_residual(const SymmetricSpaceModel& m, const Eigen::VectorXd& v, const std::vector<double>& s);
/// ||cartan_project(exp(P)) - P||_B.
double chart_roundtrip_residual(const SymmetricSpaceModel& m, const Eigen::VectorXd& p);
/// |d(psi_t q1, psi_t q2) - d(q1, q2)|.
double transvection_isometry_residual(const SymmetricSpaceModel& m, const Eigen::VectorXd& x, double t,
                                      const SpacePoint& q1, const SpacePoint& q2);
/// True iff s -> d(exp(sv).o, exp(sw).o) is nondecreasing on the given
/// increasing s values (to within 1e-12 relative).
bool distance_nondecreasing(const SymmetricSpaceModel& m, const Eigen::VectorXd& v, const Eigen::VectorXd& w,
                            const std::vector<double>& s);
/// max_j |B(Ad(exp(-Y)) X |_p, s_j)|: the Killing field of X at exp(Y).o
/// pulled back to o, paired against the tangent frame of S.
double transported_normal_pairing(const ImmersionSpec& spec, const Eigen::VectorXd& y);

struct BisectorReport {
  double r = 0.0;
  double max_difference = 0.0;   // max |d(q, z+) - d(q, z-)|
  std::size_t nodes = 0;
  double worst_t = 0.0;
  Eigen::VectorXd worst_y;
};

/// |d(q, z+) - d(q, z-)| over the spec grid, with z+- = exp(+-r JX).o.
BisectorReport bisector_equidistance(const ImmersionSpec& spec, const ComplexStructure& j, double r);

}  // namespace transvector
