#include "transvector/lie_algebra.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace transvector {

ComplexRationalMatrix adjoint(const ComplexRationalMatrix& m) {
  ComplexRationalMatrix r(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = m(i, j).conj();
  return r;
}

ComplexRationalMatrix commutator(const ComplexRationalMatrix& a, const ComplexRationalMatrix& b) {
  return a * b - b * a;
}

namespace {

// Real coordinates (re, im interleaved) of a complex matrix.
std::vector<Rational> flatten(const ComplexRationalMatrix& m) {
  std::vector<Rational> v;
  v.reserve(2 * m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      v.push_back(m(i, j).re);
      v.push_back(m(i, j).im);
    }
  }
  return v;
}

ComplexRationalMatrix combine(const MatrixRealization& r, const ExactVector& coeffs) {
  ComplexRationalMatrix m(r.size, r.size);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (sgn(coeffs[k]) == 0) continue;
    const ComplexRational c(coeffs[k], 0);
    for (std::size_t i = 0; i < r.size; ++i)
      for (std::size_t j = 0; j < r.size; ++j) m(i, j) += c * r.images[k](i, j);
  }
  return m;
}

std::vector<ExactVector> to_vectors(std::vector<std::vector<Rational>> raw) {
  std::vector<ExactVector> out;
  out.reserve(raw.size());
  for (auto& v : raw) out.emplace_back(std::move(v));
  return out;
}

}  // namespace

StructuredLieAlgebra::StructuredLieAlgebra(std::string name, std::vector<std::string> labels,
                                           std::vector<BracketTerm> brackets, RationalMatrix theta,
                                           std::optional<MatrixRealization> realization)
    : name_(std::move(name)),
      labels_(std::move(labels)),
      table_(std::move(brackets)),
      theta_(std::move(theta)),
      realization_(std::move(realization)) {
  const std::size_t d = labels_.size();
  if (d == 0) throw std::invalid_argument("algebra must have positive dimension");
  if (theta_.rows() != d || theta_.cols() != d) throw std::invalid_argument("involution matrix has wrong shape");

  dense_.assign(d * d * d, Rational(0));
  std::sort(table_.begin(), table_.end(),
            [](const BracketTerm& a, const BracketTerm& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
  for (std::size_t t = 0; t < table_.size(); ++t) {
    const auto& term = table_[t];
    if (term.i >= term.j || term.j >= d) {
      throw std::invalid_argument("bracket table entries must satisfy i < j < dim");
    }
    if (t > 0 && table_[t - 1].i == term.i && table_[t - 1].j == term.j) {
      throw std::invalid_argument("duplicate bracket entry [" + labels_[term.i] + ", " + labels_[term.j] + "]");
    }
    if (term.value.size() != d) throw std::invalid_argument("bracket value has wrong length");
    PairTerms p{term.i, term.j, {}, {}};
    for (std::size_t k = 0; k < d; ++k) {
      if (sgn(term.value[k]) == 0) continue;
      dense_[(term.i * d + term.j) * d + k] = term.value[k];
      dense_[(term.j * d + term.i) * d + k] = -term.value[k];
      p.exact.emplace_back(k, term.value[k]);
      p.real.emplace_back(k, to_double(term.value[k]));
    }
    if (!p.exact.empty()) pairs_.push_back(std::move(p));
  }

  theta_f_ = DenseMatrix<double>(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) theta_f_(i, j) = to_double(theta_(i, j));

  // B_ij = tr(ad_i ad_j) = sum_{k,l} c_ik^l c_jl^k
  killing_ = RationalMatrix(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      Rational acc = 0;
      for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t l = 0; l < d; ++l) {
          const Rational& a = structure_constant(i, k, l);
          if (sgn(a) == 0) continue;
          const Rational& b = structure_constant(j, l, k);
          if (sgn(b) != 0) acc += a * b;
        }
      }
      killing_(i, j) = acc;
      killing_(j, i) = acc;
    }
  }
  killing_f_ = DenseMatrix<double>(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) killing_f_(i, j) = to_double(killing_(i, j));

  k_basis_ = to_vectors(nullspace(theta_ - RationalMatrix::identity(d)));
  p_basis_ = to_vectors(nullspace(theta_ + RationalMatrix::identity(d)));
}

StructuredLieAlgebra StructuredLieAlgebra::from_realization(std::string name, std::vector<std::string> labels,
                                                            MatrixRealization realization) {
  const std::size_t d = labels.size();
  if (realization.images.size() != d) throw std::invalid_argument("realization needs one image per basis label");
  for (const auto& m : realization.images) {
    if (m.rows() != realization.size || m.cols() != realization.size) {
      throw std::invalid_argument("realization image has wrong size");
    }
  }
  const std::size_t n2 = 2 * realization.size * realization.size;
  RationalMatrix basis(n2, d);
  for (std::size_t k = 0; k < d; ++k) {
    const auto f = flatten(realization.images[k]);
    for (std::size_t r = 0; r < n2; ++r) basis(r, k) = f[r];
  }
  if (rank(basis) != d) throw std::invalid_argument("realization images are linearly dependent");

  auto express = [&](const ComplexRationalMatrix& m, const std::string& what) {
    auto sol = solve(basis, flatten(m));
    if (!sol) throw std::invalid_argument(what + " leaves the span of the realization");
    return ExactVector(std::move(*sol));
  };

  std::vector<BracketTerm> table;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      ExactVector v = express(commutator(realization.images[i], realization.images[j]),
                              "[" + labels[i] + ", " + labels[j] + "]");
      if (!v.is_zero()) table.push_back({i, j, std::move(v)});
    }
  }
  RationalMatrix theta(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    // Differential of theta(g) = (g^dagger)^{-1} is X -> -X^dagger.
    ComplexRationalMatrix img = adjoint(realization.images[j]);
    for (std::size_t r = 0; r < img.rows(); ++r)
      for (std::size_t c = 0; c < img.cols(); ++c) img(r, c) = -img(r, c);
    const ExactVector col = express(img, "theta(" + labels[j] + ")");
    for (std::size_t i = 0; i < d; ++i) theta(i, j) = col[i];
  }
  return StructuredLieAlgebra(std::move(name), std::move(labels), std::move(table), std::move(theta),
                              std::move(realization));
}

std::size_t StructuredLieAlgebra::index_of(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw std::invalid_argument("unknown basis label '" + label + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

void StructuredLieAlgebra::check_dim(std::size_t n) const {
  if (n != dim()) {
    throw std::invalid_argument("dimension mismatch: expected " + std::to_string(dim()) + ", got " +
                                std::to_string(n));
  }
}

// ---------------------------------------------------------------------------

namespace {

struct Tracker {
  ValidationEntry entry;
  explicit Tracker(std::string name) { entry.name = std::move(name); }
  void record(const ExactVector& violation, const std::string& where) {
    if (violation.is_zero()) return;
    const double r = violation.coefficient_norm();
    if (entry.passed || r > entry.residual) {
      entry.residual = r;
      entry.detail = where;
    }
    entry.passed = false;
  }
  void record_scalar(const Rational& violation, const std::string& where) {
    if (sgn(violation) == 0) return;
    const double r = std::abs(to_double(violation));
    if (entry.passed || r > entry.residual) {
      entry.residual = r;
      entry.detail = where;
    }
    entry.passed = false;
  }
};

RationalMatrix gram(const StructuredLieAlgebra& a, const std::vector<ExactVector>& basis) {
  RationalMatrix g(basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) g(i, j) = a.killing_form(basis[i], basis[j]);
  return g;
}

}  // namespace

ValidationReport validate_algebra(const StructuredLieAlgebra& a) {
  ValidationReport report;
  const std::size_t d = a.dim();
  const auto& L = a.labels();
  auto e = [&](std::size_t i) { return a.unit(i); };

  Tracker antisym("antisymmetry");
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      antisym.record(a.bracket(e(i), e(j)) + a.bracket(e(j), e(i)), "[" + L[i] + ", " + L[j] + "]");
    }
  }
  report.entries.push_back(antisym.entry);

  Tracker jacobi("jacobi");
  std::vector<ExactVector> units;
  for (std::size_t i = 0; i < d; ++i) units.push_back(e(i));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const ExactVector ij = a.bracket(units[i], units[j]);
      for (std::size_t k = j + 1; k < d; ++k) {
        const ExactVector v = a.bracket(units[i], a.bracket(units[j], units[k])) +
                              a.bracket(units[j], a.bracket(units[k], units[i])) + a.bracket(units[k], ij);
        jacobi.record(v, "(" + L[i] + ", " + L[j] + ", " + L[k] + ")");
      }
    }
  }
  report.entries.push_back(jacobi.entry);

  Tracker invol("theta_involutive");
  for (std::size_t i = 0; i < d; ++i) invol.record(a.apply_theta(a.apply_theta(units[i])) - units[i], L[i]);
  report.entries.push_back(invol.entry);

  Tracker autom("theta_automorphism");
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      autom.record(a.apply_theta(a.bracket(units[i], units[j])) -
                       a.bracket(a.apply_theta(units[i]), a.apply_theta(units[j])),
                   "[" + L[i] + ", " + L[j] + "]");
    }
  }
  report.entries.push_back(autom.entry);

  const RationalMatrix& B = a.killing();
  Tracker sym("killing_symmetric");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) sym.record_scalar(B(i, j) - B(j, i), "(" + L[i] + ", " + L[j] + ")");
  report.entries.push_back(sym.entry);

  // ad_z^T B + B ad_z = 0 for every basis z.
  Tracker inv("killing_invariant");
  for (std::size_t z = 0; z < d; ++z) {
    const RationalMatrix adz = a.ad_matrix(units[z]);
    const RationalMatrix m = adz.transpose() * B + B * adz;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) inv.record_scalar(m(i, j), "z = " + L[z]);
  }
  report.entries.push_back(inv.entry);

  Tracker tinv("killing_theta_invariant");
  const RationalMatrix tbt = a.theta().transpose() * B * a.theta() - B;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) tinv.record_scalar(tbt(i, j), "(" + L[i] + ", " + L[j] + ")");
  report.entries.push_back(tinv.entry);

  {
    ValidationEntry dims{"cartan_dimensions", 0.0, true, ""};
    const std::size_t kd = a.k_basis().size(), pd = a.p_basis().size();
    if (kd + pd != d) {
      dims.passed = false;
      dims.residual = static_cast<double>(d - kd - pd);
      dims.detail = "dim k + dim p != dim g";
    }
    report.entries.push_back(dims);
  }

  {
    const Inertia ik = inertia(gram(a, a.k_basis()));
    ValidationEntry neg{"killing_negative_on_k", 0.0, true, ""};
    if (ik.negative != a.k_basis().size()) {
      neg.passed = false;
      neg.residual = static_cast<double>(a.k_basis().size() - ik.negative);
      neg.detail = std::to_string(ik.positive) + " positive, " + std::to_string(ik.zero) + " null directions";
    }
    report.entries.push_back(neg);
    const Inertia ip = inertia(gram(a, a.p_basis()));
    ValidationEntry pos{"killing_positive_on_p", 0.0, true, ""};
    if (ip.positive != a.p_basis().size() || a.p_basis().empty()) {
      pos.passed = false;
      pos.residual = static_cast<double>(a.p_basis().size() - ip.positive);
      pos.detail = a.p_basis().empty() ? "p is trivial"
                                       : std::to_string(ip.negative) + " negative, " + std::to_string(ip.zero) +
                                             " null directions";
    }
    report.entries.push_back(pos);
  }

  {
    ValidationEntry ss{"semisimple", 0.0, true, ""};
    const Rational det = determinant(B);
    if (sgn(det) == 0) {
      ss.passed = false;
      ss.residual = 1.0;
      ss.detail = "Killing form is degenerate";
    }
    report.entries.push_back(ss);
  }

  Tracker cb("cartan_brackets");
  const auto& K = a.k_basis();
  const auto& P = a.p_basis();
  for (std::size_t i = 0; i < K.size(); ++i) {
    for (std::size_t j = 0; j < K.size(); ++j) {
      const auto v = a.bracket(K[i], K[j]);
      cb.record(v - a.apply_theta(v), "[k, k]");
    }
    for (std::size_t j = 0; j < P.size(); ++j) {
      const auto v = a.bracket(K[i], P[j]);
      cb.record(v + a.apply_theta(v), "[k, p]");
    }
  }
  for (std::size_t i = 0; i < P.size(); ++i) {
    for (std::size_t j = 0; j < P.size(); ++j) {
      const auto v = a.bracket(P[i], P[j]);
      cb.record(v - a.apply_theta(v), "[p, p]");
    }
  }
  report.entries.push_back(cb.entry);

  if (a.realization()) {
    const auto& r = *a.realization();
    Tracker rb("realization_brackets");
    Tracker ri("realization_involution");
    if (r.images.size() != d) {
      rb.entry.passed = false;
      rb.entry.detail = "image count differs from dimension";
    } else {
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
          const auto diff = commutator(r.images[i], r.images[j]) - combine(r, a.bracket(units[i], units[j]));
          ExactVector flat(flatten(diff));
          rb.record(flat, "[" + L[i] + ", " + L[j] + "]");
        }
        ComplexRationalMatrix img = adjoint(r.images[i]);
        for (std::size_t x = 0; x < img.rows(); ++x)
          for (std::size_t y = 0; y < img.cols(); ++y) img(x, y) = -img(x, y);
        ExactVector flat(flatten(img - combine(r, a.apply_theta(units[i]))));
        ri.record(flat, L[i]);
      }
    }
    report.entries.push_back(rb.entry);
    report.entries.push_back(ri.entry);
  }
  return report;
}

}  // namespace transvector
