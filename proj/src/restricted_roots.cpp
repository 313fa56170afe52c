#include "transvector/restricted_roots.hpp"

#include "transvector/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace transvector {

namespace {

std::size_t nonzeros(const ExactVector& v) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) ++n;
  return n;
}

// Vectors of p commuting with every basis vector of a.
std::vector<ExactVector> centralizer_in_p(const StructuredLieAlgebra& alg, const ExactSubspace& a) {
  const auto& pb = alg.p_basis();
  const std::size_t d = alg.dim();
  if (a.dim() == 0) return pb;
  RationalMatrix m(a.dim() * d, pb.size());
  for (std::size_t j = 0; j < pb.size(); ++j) {
    for (std::size_t i = 0; i < a.dim(); ++i) {
      const auto br = alg.bracket(pb[j], a.basis()[i]);
      for (std::size_t k = 0; k < d; ++k) m(i * d + k, j) = br[k];
    }
  }
  std::vector<ExactVector> out;
  for (const auto& c : nullspace(m)) {
    ExactVector v(d);
    for (std::size_t j = 0; j < pb.size(); ++j)
      if (sgn(c[j]) != 0) v += c[j] * pb[j];
    out.push_back(std::move(v));
  }
  return out;
}

Rational rationalize(double x) {
  // Continued fraction with denominators up to 1000.
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 40; ++it) {
    const double fl = std::floor(r);
    const long a = static_cast<long>(fl);
    const long h2 = a * h1 + h0;
    const long k2 = a * k1 + k0;
    if (k2 > 1000) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const double frac = r - fl;
    if (std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) < 1e-12 * std::max(1.0, std::abs(x))) break;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  Rational q(h1, k1);
  q.canonicalize();
  return q;
}

bool is_zero_values(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

std::vector<Rational> negated(std::vector<Rational> v) {
  for (auto& x : v) x = -x;
  return v;
}

bool lex_positive(const std::vector<Rational>& v) {
  for (const auto& x : v) {
    if (sgn(x) > 0) return true;
    if (sgn(x) < 0) return false;
  }
  return false;
}

}  // namespace

std::optional<std::size_t> RootDatum::find_positive(const std::vector<Rational>& values) const {
  const auto neg = negated(values);
  for (std::size_t i = 0; i < positive.size(); ++i) {
    if (positive[i].values == values || positive[i].values == neg) return i;
  }
  return std::nullopt;
}

ExactSubspace RootDatum::k_space_of(const std::vector<Rational>& values) const {
  if (is_zero_values(values)) return m;
  if (auto i = find_positive(values)) return positive[*i].k_space;
  return ExactSubspace::zero(algebra);
}

ExactSubspace RootDatum::p_space_of(const std::vector<Rational>& values) const {
  if (is_zero_values(values)) return a;
  if (auto i = find_positive(values)) return positive[*i].p_space;
  return ExactSubspace::zero(algebra);
}

ExactSubspace maximal_abelian(const AlgebraPtr& algebra) {
  ExactSubspace a = ExactSubspace::zero(algebra);
  while (true) {
    const auto cent = centralizer_in_p(*algebra, a);
    const ExactVector* best = nullptr;
    for (const auto& v : cent) {
      if (a.contains(v).member) continue;
      if (!best || nonzeros(v) < nonzeros(*best)) best = &v;
    }
    if (!best) return a;
    std::vector<ExactVector> cols = a.basis();
    cols.push_back(*best);
    a = ExactSubspace(algebra, cols);
  }
}

bool is_maximal_abelian(const ExactSubspace& a) {
  const auto& alg = a.algebra();
  if (!a.inside_p()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j)
      if (!alg.bracket(a.basis()[i], a.basis()[j]).is_zero()) return false;
  const ExactSubspace cent(a.algebra_ptr(), centralizer_in_p(alg, a));
  return cent.dim() == a.dim();
}

RootDatum restricted_root_decomposition(const AlgebraPtr& algebra, const ExactSubspace& a, std::uint64_t seed) {
  const auto& alg = *algebra;
  if (a.dim() == 0) throw std::invalid_argument("restricted_root_decomposition: a is trivial");
  if (!is_maximal_abelian(a)) throw std::invalid_argument("restricted_root_decomposition: a is not maximal abelian in p");
  const std::size_t d = alg.dim();
  const CounterRng rng(seed);
  std::vector<RationalMatrix> ad_a;
  for (const auto& v : a.basis()) ad_a.push_back(alg.ad_matrix(v));

  for (std::uint64_t attempt = 0; attempt < 8; ++attempt) {
    ExactVector h(d);
    for (std::size_t i = 0; i < a.dim(); ++i) {
      const auto c = 2 * rng.uniform_int(attempt, i, -4, 3) + 1;  // odd in [-7, 7]
      h += Rational(static_cast<long>(c)) * a.basis()[i];
    }
    const RationalMatrix adh = alg.ad_matrix(h);
    Eigen::MatrixXd f(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        f(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(adh(i, j));
    Eigen::EigenSolver<Eigen::MatrixXd> es(f, false);
    std::vector<Rational> eig;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const auto z = es.eigenvalues()(i);
      if (std::abs(z.imag()) > 1e-6 * std::max(1.0, std::abs(z))) {
        throw NonRationalSpectrum("ad_H has non-real eigenvalues; a is not in p or the algebra is not of noncompact type");
      }
      const Rational q = rationalize(z.real());
      if (std::abs(to_double(q) - z.real()) > 1e-6 * std::max(1.0, std::abs(z.real()))) {
        throw NonRationalSpectrum("ad_H has an eigenvalue with no small rational form");
      }
      if (std::find(eig.begin(), eig.end(), q) == eig.end()) eig.push_back(q);
    }
    std::sort(eig.begin(), eig.end());

    std::vector<std::pair<Rational, std::vector<ExactVector>>> spaces;
    std::size_t total = 0;
    for (const auto& mu : eig) {
      RationalMatrix shifted = adh;
      for (std::size_t i = 0; i < d; ++i) shifted(i, i) -= mu;
      std::vector<ExactVector> vs;
      for (auto& v : nullspace(shifted)) vs.emplace_back(std::move(v));
      total += vs.size();
      spaces.emplace_back(mu, std::move(vs));
    }
    if (total != d) throw NonRationalSpectrum("eigenspaces of ad_H do not span g over Q");

    bool generic = true;
    RootDatum rd;
    rd.algebra = algebra;
    rd.a = a;
    rd.generic_element = h;
    std::vector<RestrictedRoot> all;
    std::vector<ExactVector> g0;
    for (auto& [mu, vs] : spaces) {
      std::vector<Rational> values(a.dim());
      const ExactVector& v0 = vs.front();
      std::size_t piv = 0;
      while (sgn(v0[piv]) == 0) ++piv;
      for (std::size_t i = 0; i < a.dim() && generic; ++i) {
        values[i] = ad_a[i].apply(v0.coeffs())[piv] / v0[piv];
        for (const auto& v : vs) {
          if (ExactVector(ad_a[i].apply(v.coeffs())) != values[i] * v) {
            generic = false;
            break;
          }
        }
      }
      if (!generic) break;
      if (sgn(mu) == 0) {
        if (!is_zero_values(values)) {
          generic = false;
          break;
        }
        g0 = vs;
        continue;
      }
      RestrictedRoot r;
      r.values = std::move(values);
      r.g_space = ExactSubspace(algebra, vs);
      std::vector<ExactVector> ks, ps;
      for (const auto& v : vs) {
        auto parts = cartan_split(alg, v);
        ks.push_back(std::move(parts.k_part));
        ps.push_back(std::move(parts.p_part));
      }
      r.k_space = ExactSubspace(algebra, ks);
      r.p_space = ExactSubspace(algebra, ps);
      r.multiplicity = vs.size();
      all.push_back(std::move(r));
    }
    if (!generic) continue;

    std::vector<ExactVector> m_cols;
    for (const auto& v : g0) m_cols.push_back(cartan_split(alg, v).k_part);
    rd.m = ExactSubspace(algebra, m_cols);

    for (auto& r : all) {
      if (lex_positive(r.values)) rd.positive.push_back(std::move(r));
    }
    std::sort(rd.positive.begin(), rd.positive.end(),
              [](const RestrictedRoot& x, const RestrictedRoot& y) { return x.values < y.values; });
    for (const auto& r : rd.positive) rd.roots.push_back(r.values);
    for (const auto& r : rd.positive) rd.roots.push_back(negated(r.values));
    if (rd.roots.size() != all.size()) {
      throw std::logic_error("restricted roots are not closed under negation");
    }
    return rd;
  }
  throw NonRationalSpectrum("no generic element of a found after 8 attempts");
}

CommutationReport verify_commutation_rules(const RootDatum& rd) {
  CommutationReport rep;
  const auto& alg = *rd.algebra;
  const std::size_t n = rd.positive.size();
  auto add_values = [](const std::vector<Rational>& x, const std::vector<Rational>& y, int sign) {
    std::vector<Rational> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = sign > 0 ? Rational(x[i] + y[i]) : Rational(x[i] - y[i]);
    return r;
  };
  auto check = [&](const char* name, std::size_t l, std::size_t m, const ExactSubspace& left,
                   const ExactSubspace& right, const ExactSubspace& target) {
    CommutationRule rule{name, l, m, true, 0.0};
    for (const auto& u : left.basis()) {
      for (const auto& v : right.basis()) {
        const auto mem = target.contains(alg.bracket(u, v));
        ++rep.checked;
        rule.residual = std::max(rule.residual, mem.residual);
        if (!mem.member) rule.holds = false;
      }
    }
    rep.holds = rep.holds && rule.holds;
    rep.rules.push_back(std::move(rule));
  };
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t m = 0; m < n; ++m) {
      const auto& L = rd.positive[l];
      const auto& M = rd.positive[m];
      const auto sum = add_values(L.values, M.values, 1);
      const auto diff = add_values(L.values, M.values, -1);
      check("[k,p]", l, m, L.k_space, M.p_space, rd.p_space_of(sum) + rd.p_space_of(diff));
      check("[k,k]", l, m, L.k_space, M.k_space, rd.k_space_of(sum) + rd.k_space_of(diff));
      check("[p,p]", l, m, L.p_space, M.p_space, rd.k_space_of(sum) + rd.k_space_of(diff));
    }
  }
  return rep;
}

RootSpaceExample build_root_space_example(const RootDatum& rd, std::size_t positive_index, const ExactVector& x,
                                          std::size_t samples, std::uint64_t seed) {
  if (positive_index >= rd.positive.size()) throw std::invalid_argument("build_root_space_example: not a positive root");
  if (x.is_zero() || !rd.a.contains(x).member) throw std::invalid_argument("build_root_space_example: X must be a nonzero element of a");
  const auto& alg = *rd.algebra;
  const auto& root = rd.positive[positive_index];
  RootSpaceExample ex;
  ex.s = root.p_space;
  ex.x = x;

  std::vector<Rational> twice(root.values.size());
  for (std::size_t i = 0; i < twice.size(); ++i) twice[i] = 2 * root.values[i];
  const ExactSubspace k2m = rd.k_space_of(twice) + rd.m;
  const ExactSubspace a_p2 = rd.a + rd.p_space_of(twice);

  bool chain_ok = true;
  for (const auto& u : ex.s.basis()) {
    for (const auto& v : ex.s.basis()) chain_ok = chain_ok && k2m.contains(alg.bracket(u, v)).member;
    for (const auto& w : k2m.basis()) chain_ok = chain_ok && ex.s.contains(alg.bracket(u, w)).member;
  }
  ex.lie_triple_system = chain_ok && is_lie_triple_system(ex.s).holds;

  const unsigned top = 2 * static_cast<unsigned>(alg.p_basis().size()) + 1;
  const CounterRng rng(seed);
  struct ChainOutcome {
    bool odd = true;
    bool even = true;
    double residual = 0.0;
  };
  const auto outcomes = parallel_map(samples, [&](std::size_t i) {
    ChainOutcome o;
    const auto y = random_element(ex.s, rng, i);
    const auto chain = ad_chain(alg, y, top, x);
    for (unsigned k = 0; k <= top; ++k) {
      const auto mem = (k % 2 == 1) ? root.k_space.contains(chain[k]) : a_p2.contains(chain[k]);
      o.residual = std::max(o.residual, mem.residual);
      if (!mem.member) (k % 2 == 1 ? o.odd : o.even) = false;
    }
    return o;
  });
  ex.odd_chain_in_k_lambda = true;
  ex.even_chain_in_a_plus_p2lambda = true;
  for (const auto& o : outcomes) {
    ex.odd_chain_in_k_lambda = ex.odd_chain_in_k_lambda && o.odd;
    ex.even_chain_in_a_plus_p2lambda = ex.even_chain_in_a_plus_p2lambda && o.even;
    ex.chain_residual = std::max(ex.chain_residual, o.residual);
  }
  ex.condition = condition_holds(ex.s, x, samples, seed);
  return ex;
}

}  // namespace transvector
