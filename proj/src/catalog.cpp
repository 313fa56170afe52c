#include "transvector/catalog.hpp"

#include <memory>
#include <regex>

namespace transvector {

namespace {

using CM = ComplexRationalMatrix;

CM unit_matrix(std::size_t n, std::size_t a, std::size_t b, ComplexRational z = ComplexRational(1)) {
  CM m(n, n);
  m(a, b) = z;
  return m;
}

const ComplexRational kI{Rational(0), Rational(1)};

std::string idx(std::size_t a) { return std::to_string(a + 1); }

// su(n,1) with signature diag(1,...,1,-1); the last index is the negative one.
CatalogEntry complex_hyperbolic(std::size_t n) {
  if (n < 1) throw UnsupportedSpace("su(n,1) needs n >= 1");
  const std::size_t N = n + 1;
  std::vector<std::string> labels;
  MatrixRealization r;
  r.size = N;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      labels.push_back("A" + idx(a) + idx(b));
      r.images.push_back(unit_matrix(N, a, b) - unit_matrix(N, b, a));
      labels.push_back("S" + idx(a) + idx(b));
      r.images.push_back(unit_matrix(N, a, b, kI) + unit_matrix(N, b, a, kI));
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    labels.push_back("D" + idx(a));
    r.images.push_back(unit_matrix(N, a, a, kI) - unit_matrix(N, a + 1, a + 1, kI));
  }
  for (std::size_t a = 0; a < n; ++a) {
    labels.push_back("P" + idx(a));
    r.images.push_back(unit_matrix(N, a, n) + unit_matrix(N, n, a));
    labels.push_back("Q" + idx(a));
    r.images.push_back(unit_matrix(N, a, n, kI) - unit_matrix(N, n, a, kI));
  }
  const std::string name = "su(" + std::to_string(n) + ",1)";
  auto alg = std::make_shared<const StructuredLieAlgebra>(StructuredLieAlgebra::from_realization(name, labels, r));

  CatalogEntry e;
  e.kind = SpaceKind::complex_hyperbolic;
  e.n = n;
  e.id = "su" + std::to_string(n) + "1";
  e.algebra = alg;
  e.complex_structure = central_complex_structure(*alg);
  if (n >= 2) {
    CatalogPair hyper{"complex-hyperplane", {}, "H^{n-1}(C) in H^n(C): reflective, complex", {true, true, false}};
    for (std::size_t a = 0; a + 1 < n; ++a) {
      hyper.basis.push_back(alg->unit("P" + idx(a)));
      hyper.basis.push_back(alg->unit("Q" + idx(a)));
    }
    CatalogPair real{"real-form", {}, "H^n(R) in H^n(C): reflective, totally real", {true, true, true}};
    for (std::size_t a = 0; a < n; ++a) real.basis.push_back(alg->unit("P" + idx(a)));
    CatalogPair line{"complex-line", {alg->unit("P1"), alg->unit("Q1")},
                     "H^1(C) in H^n(C): reflective, complex", {true, true, false}};
    e.pairs.push_back(std::move(hyper));
    e.pairs.push_back(std::move(real));
    if (n > 2) e.pairs.push_back(std::move(line));
  }
  return e;
}

CatalogEntry real_hyperbolic(std::size_t n) {
  if (n < 2) throw UnsupportedSpace("so(n,1) needs n >= 2");
  const std::size_t N = n + 1;
  std::vector<std::string> labels;
  MatrixRealization r;
  r.size = N;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      labels.push_back("A" + idx(a) + idx(b));
      r.images.push_back(unit_matrix(N, a, b) - unit_matrix(N, b, a));
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    labels.push_back("P" + idx(a));
    r.images.push_back(unit_matrix(N, a, n) + unit_matrix(N, n, a));
  }
  const std::string name = "so(" + std::to_string(n) + ",1)";
  auto alg = std::make_shared<const StructuredLieAlgebra>(StructuredLieAlgebra::from_realization(name, labels, r));
  CatalogEntry e;
  e.kind = SpaceKind::real_hyperbolic;
  e.n = n;
  e.id = "so" + std::to_string(n) + "1";
  e.algebra = alg;
  CatalogPair hyper{"geodesic-hyperplane", {}, "H^{n-1}(R) in H^n(R): reflective", {true, true, std::nullopt}};
  for (std::size_t a = 0; a + 1 < n; ++a) hyper.basis.push_back(alg->unit("P" + idx(a)));
  CatalogPair line{"geodesic-line", {alg->unit("P1")}, "geodesic in H^n(R): reflective", {true, true, std::nullopt}};
  e.pairs.push_back(std::move(hyper));
  e.pairs.push_back(std::move(line));
  return e;
}

CatalogEntry sl_real(std::size_t n) {
  if (n < 2) throw UnsupportedSpace("sl(n,R) needs n >= 2");
  std::vector<std::string> labels;
  MatrixRealization r;
  r.size = n;
  for (std::size_t a = 0; a + 1 < n; ++a) {
    labels.push_back(n == 2 ? "H" : "H" + idx(a));
    r.images.push_back(unit_matrix(n, a, a) - unit_matrix(n, a + 1, a + 1));
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      labels.push_back(n == 2 ? "E" : "E" + idx(a) + idx(b));
      r.images.push_back(unit_matrix(n, a, b));
      labels.push_back(n == 2 ? "F" : "E" + idx(b) + idx(a));
      r.images.push_back(unit_matrix(n, b, a));
    }
  }
  const std::string name = "sl(" + std::to_string(n) + ",R)";
  auto alg = std::make_shared<const StructuredLieAlgebra>(StructuredLieAlgebra::from_realization(name, labels, r));
  CatalogEntry e;
  e.kind = SpaceKind::sl_mod_so;
  e.n = n;
  e.id = "sl" + std::to_string(n) + "r";
  e.algebra = alg;
  const std::size_t e12 = n - 1;   // first off-diagonal label follows the n-1 diagonal ones
  CatalogPair unit{"symmetric-unit", {alg->unit(e12) + alg->unit(e12 + 1)},
                   "geodesic along E12+E21: Lie triple system", {true, n == 2, std::nullopt}};
  e.pairs.push_back(std::move(unit));
  if (n >= 3) {
    CatalogPair flat{"flat", {}, "maximal flat of diagonal matrices: not reflective", {true, false, std::nullopt}};
    for (std::size_t a = 0; a + 1 < n; ++a) flat.basis.push_back(alg->unit(a));
    e.pairs.push_back(std::move(flat));
  }
  return e;
}

}  // namespace

const char* to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::complex_hyperbolic: return "complex-hyperbolic";
    case SpaceKind::real_hyperbolic: return "real-hyperbolic";
    case SpaceKind::sl_mod_so: return "sl-n-modulo-so-n";
    case SpaceKind::quaternionic_hyperbolic: return "quaternionic-hyperbolic";
    case SpaceKind::cayley_plane: return "cayley-plane";
  }
  return "unknown";
}

const CatalogPair& CatalogEntry::pair(const std::string& name) const {
  for (const auto& p : pairs)
    if (p.name == name) return p;
  throw std::invalid_argument("space " + id + " has no pair '" + name + "'");
}

std::optional<ComplexStructure> central_complex_structure(const StructuredLieAlgebra& alg) {
  const auto& kb = alg.k_basis();
  const std::size_t d = alg.dim();
  RationalMatrix m(kb.size() * d, kb.size());
  for (std::size_t j = 0; j < kb.size(); ++j)
    for (std::size_t i = 0; i < kb.size(); ++i) {
      const auto br = alg.bracket(kb[j], kb[i]);
      for (std::size_t k = 0; k < d; ++k) m(i * d + k, j) = br[k];
    }
  const auto centre = nullspace(m);
  if (centre.size() != 1) return std::nullopt;
  ExactVector zeta(d);
  for (std::size_t j = 0; j < kb.size(); ++j) zeta += centre[0][j] * kb[j];
  RationalMatrix ad = alg.ad_matrix(zeta);
  // ad(zeta)^2 = -c on p for some c > 0.
  const auto& p0 = alg.p_basis().front();
  const ExactVector sq(ad.apply(ad.apply(p0.coeffs())));
  std::size_t piv = 0;
  while (sgn(p0[piv]) == 0) ++piv;
  const Rational c = -sq[piv] / p0[piv];
  Rational root;
  if (sgn(c) <= 0 || !exact_sqrt(c, root)) return std::nullopt;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) ad(i, j) /= root;
  return ComplexStructure{std::move(ad)};
}

CatalogEntry build_space(SpaceKind kind, std::size_t n) {
  switch (kind) {
    case SpaceKind::complex_hyperbolic: return complex_hyperbolic(n);
    case SpaceKind::real_hyperbolic: return real_hyperbolic(n);
    case SpaceKind::sl_mod_so: return sl_real(n);
    case SpaceKind::quaternionic_hyperbolic:
    case SpaceKind::cayley_plane: break;
  }
  throw UnsupportedSpace(std::string(to_string(kind)) + " has no built-in model");
}

CatalogEntry build_space(const std::string& id) {
  static const std::regex pattern(R"((su|so|sl)(\d+)(1|r))");
  std::smatch m;
  if (std::regex_match(id, m, pattern)) {
    const std::size_t n = std::stoul(m[2].str());
    if (m[1] == "su" && m[3] == "1") return build_space(SpaceKind::complex_hyperbolic, n);
    if (m[1] == "so" && m[3] == "1") return build_space(SpaceKind::real_hyperbolic, n);
    if (m[1] == "sl" && m[3] == "r") return build_space(SpaceKind::sl_mod_so, n);
  }
  if (id.rfind("sp", 0) == 0) throw UnsupportedSpace("quaternionic hyperbolic spaces are not supported");
  if (id == "f4" || id == "cay") throw UnsupportedSpace("the Cayley plane is not supported");
  throw UnsupportedSpace("unknown space id '" + id + "'");
}

PairInstance build_pair(const CatalogEntry& entry, const std::string& name) {
  const auto& p = entry.pair(name);
  ExactSubspace s(entry.algebra, p.basis);
  auto normal = orthocomplement_in_p(s);
  return {std::move(s), std::move(normal)};
}

std::vector<CatalogListing> catalog_listing() {
  std::vector<CatalogListing> out;
  for (const auto& [kind, n] : {std::pair{SpaceKind::complex_hyperbolic, std::size_t{2}},
                                std::pair{SpaceKind::real_hyperbolic, std::size_t{3}},
                                std::pair{SpaceKind::sl_mod_so, std::size_t{3}}}) {
    const auto e = build_space(kind, n);
    CatalogListing l{e.id, kind, n, true, {}};
    for (const auto& p : e.pairs) l.pairs.push_back(p.name);
    out.push_back(std::move(l));
  }
  out.push_back({"sp21", SpaceKind::quaternionic_hyperbolic, 2, false, {}});
  out.push_back({"cay", SpaceKind::cayley_plane, 2, false, {}});
  return out;
}

}  // namespace transvector
