#include "transvector/extension.hpp"

#include "transvector/parallel.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace transvector {

namespace {

template <class T>
void require_triple_system(const Subspace<T>& s, const char* op) {
  if (!s.inside_p()) throw std::invalid_argument(std::string(op) + ": s is not contained in p");
  if (!is_lie_triple_system(s).holds) throw std::invalid_argument(std::string(op) + ": s is not a Lie triple system");
}

template <class T>
bool normal_to(const Subspace<T>& s, const AlgebraVector<T>& x) {
  const auto& a = s.algebra();
  for (const auto& v : s.basis()) {
    const T pairing = a.killing_form(x, v);
    if constexpr (scalar_mode_of<T>() == ScalarMode::exact) {
      if (sgn(pairing) != 0) return false;
    } else {
      const double scale = 1.0 + std::sqrt(std::abs(a.killing_form(x, x)) * std::abs(a.killing_form(v, v)));
      if (std::abs(pairing) > 1e-9 * scale) return false;
    }
  }
  return true;
}

// Frobenius norm of the structure tensor: ||[u, v]|| <= c ||u|| ||v||.
double bracket_norm(const StructuredLieAlgebra& a) {
  double s = 0.0;
  for (const auto& t : a.bracket_table()) {
    const double n = t.value.coefficient_norm();
    s += 2.0 * n * n;
  }
  return std::sqrt(s);
}

double frobenius(const DenseMatrix<double>& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * m(i, j);
  return std::sqrt(s);
}

template <class T>
ConditionVerdict<T> condition_unchecked(const Subspace<T>& s, const AlgebraVector<T>& x, std::size_t samples,
                                        std::uint64_t seed) {
  const auto& a = s.algebra();
  ConditionVerdict<T> verdict;
  verdict.max_power = static_cast<unsigned>(a.p_basis().size());
  verdict.samples = samples;
  verdict.seed = seed;
  verdict.x_not_normal = !normal_to(s, x);
  verdict.worst_residual_per_n.assign(verdict.max_power + 1, 0.0);
  const CounterRng rng(seed);

  struct SampleOutcome {
    std::vector<double> residuals;
    std::optional<ConditionWitness<T>> witness;
  };
  auto outcomes = parallel_map(samples, [&](std::size_t i) {
    SampleOutcome o;
    const auto y = random_element(s, rng, i);
    o.residuals = condition_residuals(s, x, y, verdict.max_power, &o.witness);
    if (o.witness) o.witness->sample = i;
    return o;
  });
  for (auto& o : outcomes) {
    for (std::size_t n = 0; n < o.residuals.size(); ++n) {
      verdict.worst_residual_per_n[n] = std::max(verdict.worst_residual_per_n[n], o.residuals[n]);
    }
    if (o.witness && !verdict.witness) {
      verdict.holds = false;
      verdict.witness = std::move(o.witness);
    }
  }
  return verdict;
}

}  // namespace

template <class T>
AlgebraVector<T> random_element(const Subspace<T>& s, const CounterRng& rng, std::uint64_t stream) {
  AlgebraVector<T> y(s.algebra().dim());
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const Rational c = rng.small_rational(stream, i);
    if constexpr (scalar_mode_of<T>() == ScalarMode::exact) {
      y += c * s.basis()[i];
    } else {
      y += to_double(c) * s.basis()[i];
    }
  }
  return y;
}

template <class T>
std::vector<double> condition_residuals(const Subspace<T>& s, const AlgebraVector<T>& x, const AlgebraVector<T>& y,
                                        unsigned max_power, std::optional<ConditionWitness<T>>* witness) {
  const auto& a = s.algebra();
  const auto chain = ad_chain(a, y, 2 * max_power + 1, x);
  std::vector<double> residuals(max_power + 1, 0.0);
  for (unsigned n = 0; n <= max_power; ++n) {
    const auto m = s.contains(a.bracket(x, chain[2 * n + 1]));
    residuals[n] = m.residual;
    if (!m.member && witness && !*witness) {
      ConditionWitness<T> w;
      w.y = y;
      w.n = n;
      w.residual_vector = m.remainder;
      w.residual = m.residual;
      *witness = std::move(w);
    }
  }
  return residuals;
}

template <class T>
ConditionVerdict<T> condition_holds(const Subspace<T>& s, const AlgebraVector<T>& x, std::size_t samples,
                                    std::uint64_t seed) {
  if (x.size() != s.algebra().dim()) throw std::invalid_argument("condition_holds: dimension mismatch");
  require_triple_system(s, "condition_holds");
  if (!in_p(s.algebra(), x)) throw std::invalid_argument("condition_holds: X is not in p");
  return condition_unchecked(s, x, samples, seed);
}

template <class T>
LemmaReport verify_lemma_conclusion(const Subspace<T>& s, const AlgebraVector<T>& x, const AlgebraVector<T>& y,
                                    unsigned n_max, unsigned m_max) {
  const auto& a = s.algebra();
  if (!s.contains(y).member) throw std::invalid_argument("verify_lemma_conclusion: Y is not in s");
  LemmaReport rep;
  rep.n_max = n_max;
  rep.m_max = m_max;
  const unsigned top = n_max + m_max;
  const auto chain = ad_chain(a, y, 2 * top + 2, x);

  bool hypothesis = true;
  for (unsigned m = 0; m <= top; ++m) {
    const auto r = s.contains(a.bracket(x, chain[2 * m + 1]));
    rep.hypothesis_residuals.push_back(r.residual);
    hypothesis = hypothesis && r.member;
  }
  if (!hypothesis) {
    rep.status = LemmaStatus::hypothesis_violated;
    return rep;
  }

  rep.conclusion_residuals.assign(n_max + 1, std::vector<double>(m_max + 1, 0.0));
  rep.auxiliary_residuals.assign(n_max + 1, std::vector<double>(m_max + 1, 0.0));
  for (unsigned n = 0; n <= n_max; ++n) {
    for (unsigned m = 0; m <= m_max; ++m) {
      const auto c = s.contains(a.bracket(chain[2 * n], chain[2 * m + 1]));
      const auto aux = s.contains(a.bracket(y, a.bracket(chain[2 * n], chain[2 * m])));
      rep.conclusion_residuals[n][m] = c.residual;
      rep.auxiliary_residuals[n][m] = aux.residual;
      if (!c.member || !aux.member) {
        throw LemmaContradiction("lemma conclusion fails at (n, m) = (" + std::to_string(n) + ", " +
                                 std::to_string(m) + ") although the hypothesis holds (residual " +
                                 std::to_string(std::max(c.residual, aux.residual)) + ")");
      }
    }
  }
  return rep;
}

NablaZZResult nabla_zz(const FloatSubspace& s, const FloatVector& x, const FloatVector& y, unsigned truncation) {
  if (truncation < 1) throw std::invalid_argument("nabla_zz: truncation must be at least 1");
  const auto& a = s.algebra();
  const unsigned top = 2 * truncation + 1;
  const auto chain = ad_chain(a, y, top, x);

  NablaZZResult r;
  r.truncation = truncation;
  FloatVector z(a.dim());
  double fact = 1.0;
  double abs_sum = 0.0;
  for (unsigned j = 0; j <= top; ++j) {
    if (j > 0) fact *= static_cast<double>(j);
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    z += (sign / fact) * chain[j];
    abs_sum += chain[j].coefficient_norm() / fact;
  }
  const double last = chain[top].coefficient_norm() / fact;
  r.converged = last <= 1e-14 * std::max(z.coefficient_norm(), std::numeric_limits<double>::min());

  auto parts = cartan_split(a, z);
  r.z_k = std::move(parts.k_part);
  r.z_p = std::move(parts.p_part);
  r.value = a.bracket(r.z_k, r.z_p);

  // The even powers of ad_Y applied to X lie in p and the odd ones in k,
  // so [Z^k, Z^p] = sum [ad^{2n}X, ad^{2m+1}X] / ((2n)!(2m+1)!).
  r.double_series = FloatVector(a.dim());
  double fn = 1.0;
  for (unsigned n = 0; n <= truncation; ++n) {
    if (n > 0) fn *= static_cast<double>((2 * n - 1) * (2 * n));
    double fm = 1.0;
    for (unsigned m = 0; m <= truncation; ++m) {
      if (m > 0) fm *= static_cast<double>((2 * m) * (2 * m + 1));
      r.double_series += (1.0 / (fn * fm)) * a.bracket(chain[2 * n], chain[2 * m + 1]);
    }
  }
  r.discrepancy = (r.value - r.double_series).coefficient_norm();

  const double ad_norm = frobenius(a.ad_matrix(y));
  const double c = bracket_norm(a);
  const double xn = x.coefficient_norm();
  double tail = xn * std::exp(ad_norm);
  for (unsigned j = 1; j <= top + 1; ++j) tail *= ad_norm / static_cast<double>(j);
  const double zbound = xn * std::exp(ad_norm);
  r.tail_bound = 2.0 * c * zbound * tail;
  r.rounding_bound = 8.0 * static_cast<double>(a.dim()) * std::numeric_limits<double>::epsilon() * c * abs_sum *
                     abs_sum * static_cast<double>(top + 1);
  r.membership_residual = s.contains(r.value).residual;
  return r;
}

template <class T>
double normal_field_check(const Subspace<T>& s, const AlgebraVector<T>& x, const AlgebraVector<T>& y,
                          unsigned truncation) {
  require_triple_system(s, "normal_field_check");
  if (!normal_to(s, x)) throw std::invalid_argument("normal_field_check: X is not B-orthogonal to s");
  const auto& a = s.algebra();
  const unsigned top = 2 * truncation + 1;
  const auto chain = ad_chain(a, y, top, x);
  AlgebraVector<T> z(a.dim());
  T fact(1);
  for (unsigned j = 0; j <= top; ++j) {
    if (j > 0) fact *= T(static_cast<int>(j));
    const T coef = (j % 2 == 0 ? T(1) : T(-1)) / fact;
    z += coef * chain[j];
  }
  const auto zp = cartan_split(a, z).p_part;
  double worst = 0.0;
  for (const auto& v : s.basis()) worst = std::max(worst, std::abs(to_double(a.killing_form(zp, v))));
  return worst;
}

std::vector<Counterexample> search_counterexample(const std::vector<ExactSubspace>& candidates,
                                                  const std::vector<ExactVector>& x_grid, std::size_t samples,
                                                  std::uint64_t seed) {
  std::vector<Counterexample> found;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    require_triple_system(candidates[c], "search_counterexample");
    for (const auto& x : x_grid) {
      if (!in_p(candidates[c].algebra(), x)) throw std::invalid_argument("search_counterexample: X is not in p");
      auto v = condition_unchecked(candidates[c], x, samples, seed);
      if (!v.holds) found.push_back({c, x, std::move(v)});
    }
  }
  return found;
}

std::vector<ExactVector> normal_grid(const ExactSubspace& s, int radius) {
  const auto normal = orthocomplement_in_p(s);
  const std::size_t k = normal.dim();
  std::vector<ExactVector> out;
  if (k == 0 || radius <= 0) return out;
  std::vector<int> c(k, -radius);
  while (true) {
    int g = 0;
    for (int v : c) g = std::gcd(g, std::abs(v));
    std::size_t first = 0;
    while (first < k && c[first] == 0) ++first;
    if (g == 1 && first < k && c[first] > 0) {
      ExactVector x(s.algebra().dim());
      for (std::size_t i = 0; i < k; ++i)
        if (c[i] != 0) x += Rational(c[i]) * normal.basis()[i];
      out.push_back(std::move(x));
    }
    std::size_t i = 0;
    while (i < k && c[i] == radius) c[i++] = -radius;
    if (i == k) break;
    ++c[i];
  }
  return out;
}

template ExactVector random_element(const ExactSubspace&, const CounterRng&, std::uint64_t);
template FloatVector random_element(const FloatSubspace&, const CounterRng&, std::uint64_t);
template std::vector<double> condition_residuals(const ExactSubspace&, const ExactVector&, const ExactVector&,
                                                 unsigned, std::optional<ConditionWitness<Rational>>*);
template std::vector<double> condition_residuals(const FloatSubspace&, const FloatVector&, const FloatVector&,
                                                 unsigned, std::optional<ConditionWitness<double>>*);
template ConditionVerdict<Rational> condition_holds(const ExactSubspace&, const ExactVector&, std::size_t,
                                                    std::uint64_t);
template ConditionVerdict<double> condition_holds(const FloatSubspace&, const FloatVector&, std::size_t,
                                                  std::uint64_t);
template LemmaReport verify_lemma_conclusion(const ExactSubspace&, const ExactVector&, const ExactVector&, unsigned,
                                             unsigned);
template LemmaReport verify_lemma_conclusion(const FloatSubspace&, const FloatVector&, const FloatVector&, unsigned,
                                             unsigned);
template double normal_field_check(const ExactSubspace&, const ExactVector&, const ExactVector&, unsigned);
template double normal_field_check(const FloatSubspace&, const FloatVector&, const FloatVector&, unsigned);

}  // namespace transvector
