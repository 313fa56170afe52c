#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace transvector {

template <class R>
using ComplexMatrixOf = Eigen::Matrix<std::complex<R>, Eigen::Dynamic, Eigen::Dynamic>;

using ComplexMatrix = ComplexMatrixOf<double>;
using ComplexMatrixL = ComplexMatrixOf<long double>;

/// Raised when a float computation leaves its domain (non-positive-definite
/// argument to the log, overflow in exp, degenerate metric).
class NumericalBreakdown : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// exp(A) by scaling and squaring around the degree-13 Padé approximant.
/// The scaling threshold is tightened for extended precision.
template <class R>
ComplexMatrixOf<R> expm(const ComplexMatrixOf<R>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("expm: matrix must be square");
  if (!a.allFinite()) throw NumericalBreakdown("expm: non-finite input");
  static constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0, 129060195264000.0,
      10559470521600.0,    670442572800.0,      33522128640.0,      1323241920.0,       40840800.0,
      960960.0,            16380.0,             182.0,              1.0};
  const R theta = sizeof(R) > sizeof(double) ? R(2) : R(5.371920351148152);

  const R norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  if (norm1 > theta) s = static_cast<int>(std::ceil(std::log2(static_cast<double>(norm1 / theta))));
  const ComplexMatrixOf<R> as = a / std::ldexp(R(1), s);

  const auto n = a.rows();
  const ComplexMatrixOf<R> id = ComplexMatrixOf<R>::Identity(n, n);
  const ComplexMatrixOf<R> a2 = as * as;
  const ComplexMatrixOf<R> a4 = a2 * a2;
  const ComplexMatrixOf<R> a6 = a4 * a2;
  auto c = [](std::size_t i) { return R(b[i]); };
  const ComplexMatrixOf<R> u =
      as * (a6 * (c(13) * a6 + c(11) * a4 + c(9) * a2) + c(7) * a6 + c(5) * a4 + c(3) * a2 + c(1) * id);
  const ComplexMatrixOf<R> v =
      a6 * (c(12) * a6 + c(10) * a4 + c(8) * a2) + c(6) * a6 + c(4) * a4 + c(2) * a2 + c(0) * id;
  ComplexMatrixOf<R> r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < s; ++i) r = r * r;
  if (!r.allFinite()) throw NumericalBreakdown("expm: overflow");
  return r;
}

/// Principal log of a Hermitian positive definite matrix via its
/// eigendecomposition. Throws NumericalBreakdown otherwise.
template <class R>
ComplexMatrixOf<R> logm_hpd(const ComplexMatrixOf<R>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("logm_hpd: matrix must be square");
  const ComplexMatrixOf<R> herm = (a + a.adjoint()) / R(2);
  const R scale = std::max(R(1), herm.norm());
  if ((a - herm).norm() > R(1e-8) * scale) throw NumericalBreakdown("logm_hpd: argument is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrixOf<R>> es(herm);
  if (es.info() != Eigen::Success) throw NumericalBreakdown("logm_hpd: eigendecomposition failed");
  const auto& lambda = es.eigenvalues();
  if (!(lambda.minCoeff() > R(0))) throw NumericalBreakdown("logm_hpd: argument is not positive definite");
  const Eigen::Matrix<R, Eigen::Dynamic, 1> logs = lambda.array().log().matrix();
  return es.eigenvectors() * logs.asDiagonal() * es.eigenvectors().adjoint();
}

inline ComplexMatrix expm(const ComplexMatrix& a) { return expm<double>(a); }
inline ComplexMatrix logm_hpd(const ComplexMatrix& a) { return logm_hpd<double>(a); }

}  // namespace transvector
