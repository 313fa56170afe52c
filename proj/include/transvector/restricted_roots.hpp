#pragma once

#include "transvector/extension.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace transvector {

/// Restricted root: values lambda(a_i) on the chosen basis of a, together
/// with the root space g_lambda and the k/p spaces of g_lambda + g_{-lambda}.
struct RestrictedRoot {
  std::vector<Rational> values;
  ExactSubspace g_space;
  ExactSubspace k_space;
  ExactSubspace p_space;
  std::size_t multiplicity = 0;
};

/// Restricted root decomposition relative to a maximal abelian a in p.
/// `positive` is ordered by the lexicographic rule on root values; `roots`
/// holds all of Sigma (positive roots followed by their negatives).
struct RootDatum {
  AlgebraPtr algebra;
  ExactSubspace a;
  ExactSubspace m;
  std::vector<RestrictedRoot> positive;
  std::vector<std::vector<Rational>> roots;
  ExactVector generic_element;

  /// Index of the positive root with these values (or of its negative), if any.
  std::optional<std::size_t> find_positive(const std::vector<Rational>& values) const;

  /// k_mu with k_0 = m and k_mu = {0} when mu is not a root (sign ignored).
  ExactSubspace k_space_of(const std::vector<Rational>& values) const;
  /// p_mu with p_0 = a and p_mu = {0} when mu is not a root (sign ignored).
  ExactSubspace p_space_of(const std::vector<Rational>& values) const;
};

/// Greedy maximal abelian subspace of p: repeatedly adjoins the sparsest
/// basis vector of the centralizer of the current a in p.
ExactSubspace maximal_abelian(const AlgebraPtr& algebra);

/// True iff no vector of p outside a commutes with all of a.
bool is_maximal_abelian(const ExactSubspace& a);

/// Thrown when ad_H has a spectrum that cannot be certified over Q.
class NonRationalSpectrum : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Simultaneous eigenspace decomposition of ad_a. A generic element
/// H = sum c_i a_i (odd c_i) is drawn from `seed`; up to 8 retries are made
/// if H fails to separate the joint eigenspaces.
RootDatum restricted_root_decomposition(const AlgebraPtr& algebra, const ExactSubspace& a, std::uint64_t seed = 1);

struct CommutationRule {
  std::string rule;        // "[k,p]", "[k,k]" or "[p,p]"
  std::size_t lambda = 0;
  std::size_t mu = 0;
  bool holds = true;
  double residual = 0.0;
};

struct CommutationReport {
  bool holds = true;
  std::size_t checked = 0;
  std::vector<CommutationRule> rules;
};

/// [k_l, p_m] in p_{l+m} + p_{l-m}, [k_l, k_m] in k_{l+m} + k_{l-m},
/// [p_l, p_m] in k_{l+m} + k_{l-m} for all positive l, m.
CommutationReport verify_commutation_rules(const RootDatum& rd);

struct RootSpaceExample {
  ExactSubspace s;
  ExactVector x;
  bool lie_triple_system = false;    // via [p_l,[p_l,p_l]] in [p_l, k_2l + m] in p_l
  bool odd_chain_in_k_lambda = false;
  bool even_chain_in_a_plus_p2lambda = false;
  double chain_residual = 0.0;
  ConditionVerdict<Rational> condition;
  bool certified() const {
    return lie_triple_system && odd_chain_in_k_lambda && even_chain_in_a_plus_p2lambda && condition.holds;
  }
};

/// Builds the pair (p_lambda, X) with X in a and certifies its properties.
RootSpaceExample build_root_space_example(const RootDatum& rd, std::size_t positive_index, const ExactVector& x,
                                          std::size_t samples, std::uint64_t seed);

}  // namespace transvector
