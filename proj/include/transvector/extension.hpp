#pragma once

#include "transvector/random.hpp"
#include "transvector/triple_systems.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace transvector {

/// Deterministic random element sum_i r_i s_i of s with small rational
/// coefficients r_i drawn from (seed, stream).
template <class T>
AlgebraVector<T> random_element(const Subspace<T>& s, const CounterRng& rng, std::uint64_t stream);

template <class T>
struct ConditionWitness {
  std::size_t sample = 0;
  AlgebraVector<T> y;
  unsigned n = 0;                    // failing power index: [X, ad_Y^{2n+1} X] not in s
  AlgebraVector<T> residual_vector;
  double residual = 0.0;
};

/// Outcome of testing [X, ad_Y^{2n+1} X] in s over sampled Y in s and
/// 0 <= n <= max_power. holds is a sampling verdict, not a proof.
template <class T>
struct ConditionVerdict {
  bool holds = true;
  unsigned max_power = 0;
  ScalarMode mode = scalar_mode_of<T>();
  std::vector<double> worst_residual_per_n;
  std::optional<ConditionWitness<T>> witness;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  bool x_not_normal = false;   // X has a nonzero B-pairing with s
};

/// Per-Y evaluation of the condition for n = 0..max_power. Residuals are
/// indexed by n.
template <class T>
std::vector<double> condition_residuals(const Subspace<T>& s, const AlgebraVector<T>& x, const AlgebraVector<T>& y,
                                        unsigned max_power, std::optional<ConditionWitness<T>>* witness = nullptr);

/// Decides [X, ad_Y^{2n+1} X] in s for `samples` random Y in s and all
/// n <= dim p. Throws std::invalid_argument if s is not a Lie triple system
/// in p or X is not in p.
template <class T>
ConditionVerdict<T> condition_holds(const Subspace<T>& s, const AlgebraVector<T>& x, std::size_t samples,
                                    std::uint64_t seed);

enum class LemmaStatus { passed, hypothesis_violated };

struct LemmaReport {
  LemmaStatus status = LemmaStatus::passed;
  unsigned n_max = 0;
  unsigned m_max = 0;
  std::vector<double> hypothesis_residuals;                // [X, ad^{2m+1}X], m = 0..n_max+m_max
  std::vector<std::vector<double>> conclusion_residuals;   // [ad^{2n}X, ad^{2m+1}X]
  std::vector<std::vector<double>> auxiliary_residuals;    // ad_Y [ad^{2n}X, ad^{2m}X]
  bool passed() const { return status == LemmaStatus::passed; }
};

/// Raised when the hypothesis holds but the conclusion fails. That would
/// contradict the algebraic lemma and must never be swallowed.
class LemmaContradiction : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

template <class T>
LemmaReport verify_lemma_conclusion(const Subspace<T>& s, const AlgebraVector<T>& x, const AlgebraVector<T>& y,
                                    unsigned n_max, unsigned m_max);

struct NablaZZResult {
  FloatVector value;            // [Z^k, Z^p] with Z = e^{-ad_Y} X split by theta
  FloatVector double_series;    // sum_{n,m<=K} [ad^{2n}X, ad^{2m+1}X] / ((2n)! (2m+1)!)
  FloatVector z_k;
  FloatVector z_p;
  double discrepancy = 0.0;     // ||value - double_series||
  double tail_bound = 0.0;      // bound on the truncation error of value
  double rounding_bound = 0.0;  // floating-point accumulation allowance
  double membership_residual = 0.0;
  bool converged = true;        // last retained term <= 1e-14 of the running norm
  unsigned truncation = 0;
};

/// Evaluates (nabla_Z Z)_p = [Z^k, Z^p] two ways, truncating the
/// exponential at order 2K+1.
NablaZZResult nabla_zz(const FloatSubspace& s, const FloatVector& x, const FloatVector& y, unsigned truncation);

/// max_v |B(Z^p, v)| over the basis of s, with Z^p the p-part of the
/// truncated e^{-ad_Y} X. Requires X B-orthogonal to s and s a Lie triple
/// system.
template <class T>
double normal_field_check(const Subspace<T>& s, const AlgebraVector<T>& x, const AlgebraVector<T>& y,
                          unsigned truncation);

struct Counterexample {
  std::size_t candidate = 0;
  ExactVector x;
  ConditionVerdict<Rational> verdict;
};

/// Runs condition_holds over every (candidate, X) and returns the failures.
std::vector<Counterexample> search_counterexample(const std::vector<ExactSubspace>& candidates,
                                                  const std::vector<ExactVector>& x_grid, std::size_t samples,
                                                  std::uint64_t seed);

/// Primitive integer combinations (entries in [-radius, radius]) of the
/// B-orthogonal complement of s in p; one representative per line.
std::vector<ExactVector> normal_grid(const ExactSubspace& s, int radius);

}  // namespace transvector
