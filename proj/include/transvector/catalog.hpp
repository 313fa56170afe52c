#pragma once

#include "transvector/triple_systems.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace transvector {

enum class SpaceKind {
  complex_hyperbolic,      // SU(n,1)/S(U(n)xU(1))
  real_hyperbolic,         // SO(n,1)/SO(n)
  sl_mod_so,               // SL(n,R)/SO(n)
  quaternionic_hyperbolic, // stub, unsupported
  cayley_plane,            // stub, unsupported
};

const char* to_string(SpaceKind k);

class UnsupportedSpace : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExpectedPredicates {
  bool lie_triple_system = true;
  bool reflective = true;
  std::optional<bool> totally_real;   // only declared for Hermitian spaces
};

struct CatalogPair {
  std::string name;
  std::vector<ExactVector> basis;
  std::string description;
  ExpectedPredicates expected;

  std::size_t extension_dim() const { return basis.size() + 1; }
};

struct CatalogEntry {
  SpaceKind kind = SpaceKind::complex_hyperbolic;
  std::size_t n = 0;
  std::string id;   // e.g. "su21", "so31", "sl3r"
  AlgebraPtr algebra;
  std::optional<ComplexStructure> complex_structure;
  std::vector<CatalogPair> pairs;

  const CatalogPair& pair(const std::string& name) const;
};

CatalogEntry build_space(SpaceKind kind, std::size_t n);

/// Parses ids of the form su{n}1, so{n}1, sl{n}r.
CatalogEntry build_space(const std::string& id);

struct PairInstance {
  ExactSubspace s;
  ExactSubspace normal;   // s-perp inside p
};

PairInstance build_pair(const CatalogEntry& entry, const std::string& name);

struct CatalogListing {
  std::string id;
  SpaceKind kind;
  std::size_t n;
  bool supported;
  std::vector<std::string> pairs;
};

/// The built-in spaces at their default sizes, plus the unsupported stubs.
std::vector<CatalogListing> catalog_listing();

/// Complex structure ad(zeta)|_p for the generator zeta of the centre of k,
/// scaled so that J^2 = -1 on p. Returns nullopt when the centre of k is not
/// one-dimensional or no rational scale exists.
std::optional<ComplexStructure> central_complex_structure(const StructuredLieAlgebra& alg);

}  // namespace transvector
