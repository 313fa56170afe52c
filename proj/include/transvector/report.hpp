#pragma once

#include "transvector/catalog.hpp"
#include "transvector/geometry.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace transvector {

inline constexpr const char* kArtifactVersion = "1.0.0";

using Json = nlohmann::ordered_json;

enum class Command { check, lemma, roots, construct, verify, bisector, catalog };

const char* to_string(Command c);
Command parse_command(const std::string& name);

/// Invalid or inconsistent configuration (exit status 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Point-cloud export refused before any file was opened.
class GridTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  Command command = Command::check;
  std::string space;          // catalog id, e.g. su21
  std::string algebra_file;   // .alg definition instead of a catalog id
  std::string pair;           // catalog pair name
  std::string s_file;         // JSON with "s" (and optional named "x" vectors)
  std::string x;              // name from s_file, or "label:q,label:q", or d comma-separated rationals
  std::uint64_t seed = 1;
  std::size_t samples = 64;
  std::size_t normals = 5;
  unsigned n_max = 4;
  unsigned m_max = 4;
  unsigned truncation = 12;
  std::size_t steps = 0;      // grid points per axis; 0 picks 5 (7 for bisector)
  double half_width = 0.5;
  double h = 1e-3;
  bool richardson = false;
  double tol_h = 1e-4;
  double tol_baseline = 1e-5;
  double tol_bisector = 1e-8;
  double control_min = 1e-2;
  double slack = 1e-3;
  double r = 0.5;
  std::vector<double> t_samples{-1.0, -0.5, -0.25, 0.25, 0.5, 1.0};
  std::string out;            // report path; empty writes nothing
  std::string export_path;
  std::string export_format = "csv";
  bool list = false;

  /// Throws ConfigError on non-positive tolerances, empty grids, etc.
  void validate() const;
  Json echo() const;
};

struct RunResult {
  Json report;
  int status = 0;   // 0 pass, 1 expectation failure
};

/// Dispatches one command. Configuration problems throw ConfigError (or a
/// parse error); numerical failures throw NumericalBreakdown.
RunResult run(const RunConfig& config);

/// Report bytes with the wall-time field removed, for determinism checks.
std::string stable_dump(const Json& report);

/// Writes to a sibling temporary file and renames it into place.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

/// One row (csv) or vertex (ply) per grid node of the spec. Grids above
/// 1e7 nodes are refused with GridTooLarge before the file is touched.
void export_point_cloud(const ImmersionSpec& spec, const std::filesystem::path& path, const std::string& format);

/// Vector from "label:q,label:q" or d comma-separated rationals.
ExactVector parse_vector_spec(const StructuredLieAlgebra& alg, const std::string& text);
ExactVector vector_from_json(const StructuredLieAlgebra& alg, const Json& j);

/// `count` nonzero random small-rational combinations of the normal basis,
/// deterministic in seed. Empty when the normal space is zero.
std::vector<ExactVector> sample_normals(const ExactSubspace& normal, std::size_t count, std::uint64_t seed);

Json to_json(const ExactVector& v);
Json to_json(const StructuredLieAlgebra& alg, const ExactVector& v);

}  // namespace transvector
