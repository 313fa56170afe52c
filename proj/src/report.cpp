#include "transvector/report.hpp"

#include "transvector/alg_file.hpp"
#include "transvector/extension.hpp"
#include "transvector/parallel.hpp"
#include "transvector/restricted_roots.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace transvector {

const char* to_string(Command c) {
  switch (c) {
    case Command::check: return "check";
    case Command::lemma: return "lemma";
    case Command::roots: return "roots";
    case Command::construct: return "construct";
    case Command::verify: return "verify";
    case Command::bisector: return "bisector";
    case Command::catalog: return "catalog";
  }
  return "unknown";
}

Command parse_command(const std::string& name) {
  for (auto c : {Command::check, Command::lemma, Command::roots, Command::construct, Command::verify, Command::bisector,
                 Command::catalog})
    if (name == to_string(c)) return c;
  throw ConfigError("unknown command '" + name + "'");
}

void RunConfig::validate() const {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(what) + " must be positive and finite");
  };
  positive(h, "h");
  positive(tol_h, "tol-h");
  positive(tol_baseline, "tol-baseline");
  positive(tol_bisector, "tol-bisector");
  positive(control_min, "control-min");
  positive(slack, "slack");
  positive(r, "r");
  positive(half_width, "half-width");
  if (samples == 0) throw ConfigError("samples must be positive");
  if (normals == 0) throw ConfigError("normals must be positive");
  if (truncation == 0) throw ConfigError("truncation must be at least 1");
  for (double t : t_samples)
    if (!std::isfinite(t)) throw ConfigError("t samples must be finite");
  if (!space.empty() && !algebra_file.empty()) throw ConfigError("give either --space or --algebra, not both");
  if (!pair.empty() && !s_file.empty()) throw ConfigError("give either --pair or --s, not both");
  if (export_format != "csv" && export_format != "ply") throw ConfigError("export format must be csv or ply");
}

Json RunConfig::echo() const {
  Json j;
  j["command"] = to_string(command);
  j["space"] = space;
  j["algebra_file"] = algebra_file;
  j["pair"] = pair;
  j["s_file"] = s_file;
  j["x"] = x;
  j["seed"] = seed;
  j["samples"] = samples;
  j["normals"] = normals;
  j["n_max"] = n_max;
  j["m_max"] = m_max;
  j["truncation"] = truncation;
  j["steps"] = steps;
  j["half_width"] = half_width;
  j["h"] = h;
  j["richardson"] = richardson;
  j["tol_h"] = tol_h;
  j["tol_baseline"] = tol_baseline;
  j["tol_bisector"] = tol_bisector;
  j["control_min"] = control_min;
  j["slack"] = slack;
  j["r"] = r;
  j["t_samples"] = t_samples;
  j["export"] = export_path;
  j["export_format"] = export_format;
  j["list"] = list;
  return j;
}

Json to_json(const ExactVector& v) {
  Json j = Json::array();
  for (std::size_t i = 0; i < v.size(); ++i) j.push_back(to_string(v[i]));
  return j;
}

Json to_json(const StructuredLieAlgebra& alg, const ExactVector& v) {
  Json j = Json::object();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) j[alg.labels()[i]] = to_string(v[i]);
  return j;
}

namespace {

Json to_json(const Eigen::VectorXd& v) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v(i));
  return j;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

}  // namespace

ExactVector parse_vector_spec(const StructuredLieAlgebra& alg, const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.empty()) throw ConfigError("empty vector '" + text + "'");
  ExactVector v(alg.dim());
  if (text.find(':') != std::string::npos) {
    for (const auto& raw : parts) {
      const auto p = trim(raw);
      const auto colon = p.find(':');
      if (colon == std::string::npos) throw ConfigError("expected label:value in '" + p + "'");
      const auto label = trim(p.substr(0, colon));
      std::size_t idx = 0;
      try {
        idx = alg.index_of(label);
      } catch (const std::exception&) {
        throw ConfigError("unknown basis label '" + label + "'");
      }
      try {
        v[idx] += parse_rational(trim(p.substr(colon + 1)));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
    return v;
  }
  if (parts.size() != alg.dim()) {
    throw ConfigError("vector '" + text + "' has " + std::to_string(parts.size()) + " entries, expected " +
                      std::to_string(alg.dim()));
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    try {
      v[i] = parse_rational(trim(parts[i]));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  return v;
}

ExactVector vector_from_json(const StructuredLieAlgebra& alg, const Json& j) {
  auto scalar = [](const Json& e) -> Rational {
    try {
      if (e.is_string()) return parse_rational(e.get<std::string>());
      if (e.is_number_integer()) return Rational(e.get<long>());
    } catch (const std::invalid_argument& ex) {
      throw ConfigError(ex.what());
    }
    throw ConfigError("vector entries must be integers or rational strings");
  };
  ExactVector v(alg.dim());
  if (j.is_object()) {
    for (const auto& [label, value] : j.items()) {
      std::size_t idx = 0;
      try {
        idx = alg.index_of(label);
      } catch (const std::exception&) {
        throw ConfigError("unknown basis label '" + label + "'");
      }
      v[idx] = scalar(value);
    }
    return v;
  }
  if (j.is_array()) {
    if (j.size() != alg.dim()) throw ConfigError("vector array has the wrong length");
    for (std::size_t i = 0; i < j.size(); ++i) v[i] = scalar(j[i]);
    return v;
  }
  if (j.is_string()) return parse_vector_spec(alg, j.get<std::string>());
  throw ConfigError("vectors must be objects, arrays or strings");
}

std::vector<ExactVector> sample_normals(const ExactSubspace& normal, std::size_t count, std::uint64_t seed) {
  std::vector<ExactVector> out;
  if (normal.dim() == 0) return out;
  const CounterRng rng(seed ^ 0x6e6f726d616c73ULL);
  for (std::uint64_t stream = 0; out.size() < count; ++stream) {
    const auto x = random_element(normal, rng, stream);
    if (!x.is_zero()) out.push_back(x);
  }
  return out;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string stable_dump(const Json& report) {
  Json copy = report;
  copy.erase("wall_time_s");
  return copy.dump(2);
}

namespace {

void ensure_exportable(const ImmersionSpec& spec, const std::string& format) {
  constexpr double kMaxNodes = 1e7;
  double nodes = static_cast<double>(spec.t_axis.steps);
  for (const auto& a : spec.y_axes) nodes *= static_cast<double>(a.steps);
  if (nodes > kMaxNodes) {
    throw GridTooLarge("grid has " + std::to_string(static_cast<long long>(nodes)) + " nodes; at most 10^7 are exported");
  }
  if (format != "csv" && format != "ply") throw ConfigError("export format must be csv or ply");
}

}  // namespace

void export_point_cloud(const ImmersionSpec& spec, const std::filesystem::path& path, const std::string& format) {
  ensure_exportable(spec, format);
  const CurvatureReport rep = curvature_report(spec);
  std::vector<Eigen::VectorXd> coords = parallel_map(rep.samples.size(), [&](std::size_t i) {
    return immersion_coords(spec, rep.samples[i].t, rep.samples[i].y);
  });
  std::ostringstream out;
  out.precision(17);
  if (format == "csv") {
    out << "t";
    for (std::size_t j = 0; j < spec.s_dim(); ++j) out << ",Y" << j + 1;
    for (std::size_t j = 0; j < spec.model->p_dim(); ++j) out << ",P" << j + 1;
    out << ",meanH\n";
    for (std::size_t i = 0; i < rep.samples.size(); ++i) {
      const auto& s = rep.samples[i];
      out << s.t;
      for (Eigen::Index j = 0; j < s.y.size(); ++j) out << ',' << s.y(j);
      for (Eigen::Index j = 0; j < coords[i].size(); ++j) out << ',' << coords[i](j);
      out << ',' << s.h.norm << '\n';
    }
  } else {
    out << "ply\nformat ascii 1.0\ncomment first three normal coordinates\nelement vertex " << rep.samples.size()
        << "\nproperty double x\nproperty double y\nproperty double z\nend_header\n";
    for (const auto& c : coords) {
      for (Eigen::Index j = 0; j < 3; ++j) out << (j ? " " : "") << (j < c.size() ? c(j) : 0.0);
      out << '\n';
    }
  }
  write_text_atomic(path, out.str());
}

// ---------------------------------------------------------------------------

namespace {

class Checks {
 public:
  Json& add(const std::string& name, const std::string& mode, double tolerance, bool passed, bool required = true) {
    Json j;
    j["name"] = name;
    j["mode"] = mode;
    j["tolerance"] = tolerance;
    j["passed"] = passed;
    j["required"] = required;
    entries_.push_back(std::move(j));
    if (required && !passed) ++failed_;
    if (required) ++required_;
    return entries_.back();
  }
  std::size_t failed() const { return failed_; }
  std::size_t required() const { return required_; }
  Json to_json() const { return Json(entries_); }

 private:
  std::vector<Json> entries_;
  std::size_t failed_ = 0;
  std::size_t required_ = 0;
};

struct Context {
  std::optional<CatalogEntry> entry;
  AlgebraPtr alg;
  std::optional<ExactSubspace> s;
  std::string s_name;
  std::optional<Json> s_json;
  std::vector<ExactVector> xs;
  bool explicit_x = false;
};

void load_algebra(const RunConfig& c, Context& ctx) {
  if (!c.space.empty()) {
    ctx.entry = build_space(c.space);
    ctx.alg = ctx.entry->algebra;
  } else if (!c.algebra_file.empty()) {
    ctx.alg = std::make_shared<const StructuredLieAlgebra>(parse_algebra_file(c.algebra_file));
  } else {
    throw ConfigError("no algebra: give --space or --algebra");
  }
}

void load_subspace(const RunConfig& c, Context& ctx) {
  if (!c.pair.empty()) {
    if (!ctx.entry) throw ConfigError("--pair needs a catalog --space");
    const auto& p = ctx.entry->pair(c.pair);
    ctx.s = ExactSubspace(ctx.alg, p.basis);
    ctx.s_name = p.name;
  } else if (!c.s_file.empty()) {
    std::ifstream in(c.s_file);
    if (!in) throw ConfigError("cannot open " + c.s_file);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(c.s_file + ": " + e.what());
    }
    if (!j.contains("s") || !j["s"].is_array()) throw ConfigError(c.s_file + ": missing array 's'");
    std::vector<ExactVector> cols;
    for (const auto& v : j["s"]) cols.push_back(vector_from_json(*ctx.alg, v));
    ctx.s = ExactSubspace(ctx.alg, cols);
    ctx.s_name = j.value("name", std::filesystem::path(c.s_file).stem().string());
    ctx.s_json = std::move(j);
  } else {
    throw ConfigError("no subspace: give --pair or --s");
  }
  if (!ctx.s->inside_p()) throw ConfigError("s is not contained in p");
  if (!c.x.empty()) {
    if (ctx.s_json && ctx.s_json->contains("x") && (*ctx.s_json)["x"].contains(c.x)) {
      ctx.xs.push_back(vector_from_json(*ctx.alg, (*ctx.s_json)["x"][c.x]));
    } else {
      ctx.xs.push_back(parse_vector_spec(*ctx.alg, c.x));
    }
    ctx.explicit_x = true;
  } else {
    ctx.xs = sample_normals(orthocomplement_in_p(*ctx.s), c.normals, c.seed);
  }
  for (const auto& x : ctx.xs) {
    if (x.is_zero()) throw ConfigError("X is zero");
    if (!in_p(*ctx.alg, x)) throw ConfigError("X is not in p");
  }
}

bool b_orthogonal(const ExactSubspace& s, const ExactVector& x) {
  for (const auto& v : s.basis())
    if (sgn(s.algebra().killing_form(x, v)) != 0) return false;
  return true;
}

Json verdict_json(const StructuredLieAlgebra& alg, const ConditionVerdict<Rational>& v) {
  Json j;
  j["holds"] = v.holds;
  j["sampling"] = "exact-sampled";
  j["max_power"] = v.max_power;
  j["samples"] = v.samples;
  j["seed"] = v.seed;
  j["worst_residual_per_n"] = v.worst_residual_per_n;
  j["x_not_normal"] = v.x_not_normal;
  if (v.witness) {
    Json w;
    w["sample"] = v.witness->sample;
    w["y"] = to_json(alg, v.witness->y);
    w["n"] = v.witness->n;
    w["residual"] = v.witness->residual;
    w["residual_vector"] = to_json(alg, v.witness->residual_vector);
    j["witness"] = std::move(w);
  }
  return j;
}

Json subspace_json(const ExactSubspace& s, const std::string& name) {
  Json j;
  j["name"] = name;
  j["dim"] = s.dim();
  Json basis = Json::array();
  for (const auto& v : s.basis()) basis.push_back(to_json(s.algebra(), v));
  j["basis"] = std::move(basis);
  return j;
}

ModelPtr model_for(const Context& ctx) {
  if (!ctx.alg->realization()) throw ConfigError("algebra " + ctx.alg->name() + " has no matrix realization");
  return std::make_shared<const SymmetricSpaceModel>(ctx.alg);
}

std::size_t steps_for(const RunConfig& c, std::size_t fallback) { return c.steps == 0 ? fallback : c.steps; }

bool lts_check(const Context& ctx, Checks& checks) {
  const auto lts = is_lie_triple_system(*ctx.s);
  auto& e = checks.add("lie_triple_system", "exact", 0.0, lts.holds);
  e["residual"] = lts.max_residual;
  if (lts.witness) e["witness"] = {lts.witness->i, lts.witness->j, lts.witness->k};
  return lts.holds;
}

// --- commands --------------------------------------------------------------

void cmd_check(const RunConfig& c, Context& ctx, Checks& checks, Json& data) {
  load_subspace(c, ctx);
  data["s"] = subspace_json(*ctx.s, ctx.s_name);
  if (!lts_check(ctx, checks)) return;
  Json per_x = Json::array();
  for (std::size_t i = 0; i < ctx.xs.size(); ++i) {
    const auto verdict = condition_holds(*ctx.s, ctx.xs[i], c.samples, c.seed);
    auto& e = checks.add("condition_holds", "exact", 0.0, verdict.holds);
    e["x"] = to_json(*ctx.alg, ctx.xs[i]);
    e["verdict"] = verdict_json(*ctx.alg, verdict);
  }
}

struct LemmaOutcome {
  bool contradiction = false;
  std::string message;
  std::size_t passed = 0;
  std::size_t hypothesis_violated = 0;
};

LemmaOutcome run_lemma(const RunConfig& c, const ExactSubspace& s, const ExactVector& x) {
  const CounterRng rng(c.seed);
  const auto outcomes = parallel_map(c.samples, [&](std::size_t i) {
    LemmaOutcome o;
    const auto y = random_element(s, rng, i);
    try {
      const auto rep = verify_lemma_conclusion(s, x, y, c.n_max, c.m_max);
      (rep.passed() ? o.passed : o.hypothesis_violated) = 1;
    } catch (const LemmaContradiction& e) {
      o.contradiction = true;
      o.message = e.what();
    }
    return o;
  });
  LemmaOutcome total;
  for (const auto& o : outcomes) {
    total.passed += o.passed;
    total.hypothesis_violated += o.hypothesis_violated;
    if (o.contradiction && !total.contradiction) {
      total.contradiction = true;
      total.message = o.message;
    }
  }
  return total;
}

struct SeriesOutcome {
  double worst_ratio = 0.0;         // discrepancy / (10 (tail + rounding))
  double worst_membership = 0.0;
  bool converged = true;
};

SeriesOutcome run_series(const RunConfig& c, const ExactSubspace& s, const ExactVector& x) {
  const FloatSubspace fs = to_float(s);
  const FloatVector xf = to_float(x);
  const CounterRng rng(c.seed);
  const auto results = parallel_map(c.samples, [&](std::size_t i) {
    return nabla_zz(fs, xf, to_float(random_element(s, rng, i)), c.truncation);
  });
  SeriesOutcome o;
  for (const auto& r : results) {
    const double budget = 10.0 * (r.tail_bound + r.rounding_bound);
    o.worst_ratio = std::max(o.worst_ratio, budget > 0.0 ? r.discrepancy / budget : (r.discrepancy > 0.0 ? 1e300 : 0.0));
    o.worst_membership = std::max(o.worst_membership, r.membership_residual);
    o.converged = o.converged && r.converged;
  }
  return o;
}

double run_normal_field(const RunConfig& c, const ExactSubspace& s, const ExactVector& x) {
  const FloatSubspace fs = to_float(s);
  const FloatVector xf = to_float(x);
  const CounterRng rng(c.seed);
  const auto vals = parallel_map(c.samples, [&](std::size_t i) {
    return normal_field_check(fs, xf, to_float(random_element(s, rng, i)), c.truncation);
  });
  double worst = 0.0;
  for (double v : vals) worst = std::max(worst, v);
  return worst;
}

void lemma_and_series(const RunConfig& c, const Context& ctx, Checks& checks, const ExactVector& x, bool holds) {
  const auto lemma = run_lemma(c, *ctx.s, x);
  auto& e = checks.add("lemma_conclusion", "exact", 0.0, !lemma.contradiction && (!holds || lemma.hypothesis_violated == 0));
  e["x"] = to_json(*ctx.alg, x);
  e["n_max"] = c.n_max;
  e["m_max"] = c.m_max;
  e["samples_passed"] = lemma.passed;
  e["hypothesis_violated"] = lemma.hypothesis_violated;
  e["contradiction"] = lemma.contradiction;
  if (lemma.contradiction) e["diagnostic"] = lemma.message;

  const auto series = run_series(c, *ctx.s, x);
  auto& se = checks.add("series_identity", "float", 1.0, series.worst_ratio <= 1.0);
  se["x"] = to_json(*ctx.alg, x);
  se["truncation"] = c.truncation;
  se["worst_discrepancy_over_budget"] = series.worst_ratio;
  se["converged"] = series.converged;
  auto& me = checks.add("nabla_zz_membership", "float", 1e-8, series.worst_membership <= 1e-8, holds);
  me["x"] = to_json(*ctx.alg, x);
  me["residual"] = series.worst_membership;

  if (b_orthogonal(*ctx.s, x)) {
    const double pairing = run_normal_field(c, *ctx.s, x);
    auto& ne = checks.add("normal_field", "float", 1e-10, pairing <= 1e-10);
    ne["x"] = to_json(*ctx.alg, x);
    ne["max_pairing"] = pairing;
  }
}

void cmd_lemma(const RunConfig& c, Context& ctx, Checks& checks, Json& data) {
  load_subspace(c, ctx);
  data["s"] = subspace_json(*ctx.s, ctx.s_name);
  if (!lts_check(ctx, checks)) return;
  for (const auto& x : ctx.xs) {
    const auto verdict = condition_holds(*ctx.s, x, c.samples, c.seed);
    auto& e = checks.add("condition_holds", "exact", 0.0, verdict.holds, false);
    e["x"] = to_json(*ctx.alg, x);
    e["verdict"] = verdict_json(*ctx.alg, verdict);
    lemma_and_series(c, ctx, checks, x, verdict.holds);
  }
}

std::vector<ExactVector> abelian_grid(const ExactSubspace& a) {
  // Primitive combinations with entries in {-1, 0, 1}, first nonzero positive.
  std::vector<ExactVector> out;
  const std::size_t r = a.dim();
  std::size_t total = 1;
  for (std::size_t i = 0; i < r; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t k = code;
    std::vector<int> c(r);
    for (std::size_t i = 0; i < r; ++i) {
      c[i] = static_cast<int>(k % 3) - 1;
      k /= 3;
    }
    const auto first = std::find_if(c.begin(), c.end(), [](int v) { return v != 0; });
    if (first == c.end() || *first < 0) continue;
    ExactVector x(a.algebra().dim());
    for (std::size_t i = 0; i < r; ++i)
      if (c[i] != 0) x += Rational(c[i]) * a.basis()[i];
    out.push_back(std::move(x));
  }
  return out;
}

Json values_json(const std::vector<Rational>& v) {
  Json j = Json::array();
  for (const auto& q : v) j.push_back(to_string(q));
  return j;
}

void cmd_roots(const RunConfig& c, Context& ctx, Checks& checks, Json& data) {
  const auto& alg = *ctx.alg;
  const ExactSubspace a = maximal_abelian(ctx.alg);
  checks.add("maximal_abelian", "exact", 0.0, is_maximal_abelian(a))["dim"] = a.dim();
  const RootDatum rd = restricted_root_decomposition(ctx.alg, a, c.seed);
  data["a"] = subspace_json(a, "a");
  data["m_dim"] = rd.m.dim();
  data["generic_element"] = to_json(alg, rd.generic_element);
  Json roots = Json::array();
  std::size_t k_sum = rd.m.dim(), p_sum = a.dim();
  bool mult_ok = true, eigen_ok = true;
  for (const auto& r : rd.positive) {
    Json j;
    j["values"] = values_json(r.values);
    j["multiplicity"] = r.multiplicity;
    j["dim_k"] = r.k_space.dim();
    j["dim_p"] = r.p_space.dim();
    roots.push_back(std::move(j));
    k_sum += r.k_space.dim();
    p_sum += r.p_space.dim();
    mult_ok = mult_ok && r.k_space.dim() == r.p_space.dim();
    for (std::size_t i = 0; i < a.dim(); ++i) {
      const auto adh = alg.ad_matrix(a.basis()[i]);
      for (const auto& v : r.p_space.basis()) {
        const ExactVector sq(adh.apply(adh.apply(v.coeffs())));
        eigen_ok = eigen_ok && sq == (r.values[i] * r.values[i]) * v;
      }
    }
  }
  data["positive_roots"] = std::move(roots);
  Json all = Json::array();
  for (const auto& r : rd.roots) all.push_back(values_json(r));
  data["roots"] = std::move(all);

  auto& dk = checks.add("dimension_bookkeeping", "exact", 0.0,
                        k_sum == alg.k_basis().size() && p_sum == alg.p_basis().size());
  dk["dim_k"] = alg.k_basis().size();
  dk["dim_m_plus_k_lambda"] = k_sum;
  dk["dim_p"] = alg.p_basis().size();
  dk["dim_a_plus_p_lambda"] = p_sum;
  checks.add("multiplicity_symmetry", "exact", 0.0, mult_ok);
  checks.add("ad_h_squared_eigen", "exact", 0.0, eigen_ok);

  const auto comm = verify_commutation_rules(rd);
  auto& ce = checks.add("commutation_rules", "exact", 0.0, comm.holds);
  ce["checked_brackets"] = comm.checked;
  double worst = 0.0;
  for (const auto& r : comm.rules) worst = std::max(worst, r.residual);
  ce["residual"] = worst;

  Json examples = Json::array();
  bool all_certified = true;
  for (std::size_t li = 0; li < rd.positive.size(); ++li) {
    for (const auto& x : abelian_grid(a)) {
      const auto ex = build_root_space_example(rd, li, x, c.samples, c.seed);
      Json j;
      j["root"] = values_json(rd.positive[li].values);
      j["x"] = to_json(alg, x);
      j["lie_triple_system"] = ex.lie_triple_system;
      j["odd_chain_in_k_lambda"] = ex.odd_chain_in_k_lambda;
      j["even_chain_in_a_plus_p2lambda"] = ex.even_chain_in_a_plus_p2lambda;
      j["condition_holds"] = ex.condition.holds;
      examples.push_back(std::move(j));
      all_certified = all_certified && ex.certified();
    }
  }
  auto& re = checks.add("root_space_examples", "exact", 0.0, all_certified);
  re["examples"] = std::move(examples);
}

// X rescaled by a dyadic rational to B-norm close to 1; the condition is
// scale invariant and the grids are sized for unit speed.
ExactVector unit_scaled(const StructuredLieAlgebra& alg, const ExactVector& x) {
  const double b = to_double(alg.killing_form(x, x));
  if (!(b > 0.0)) return x;
  const long num = std::max(1L, std::lround(1024.0 / std::sqrt(b)));
  return Rational(num, 1024) * x;
}

void geometry_checks(const RunConfig& c, const Context& ctx, const ModelPtr& model, Checks& checks,
                     const ExactVector& raw_x, bool holds, bool with_halving, bool with_distance) {
  const ExactVector x = unit_scaled(*ctx.alg, raw_x);
  ImmersionSpec spec = make_immersion_spec(model, *ctx.s, x, steps_for(c, 5), c.half_width);
  spec.h = c.h;
  spec.truncation = c.truncation;
  spec.richardson = c.richardson;
  const Json xj = to_json(*ctx.alg, x);

  const auto rep = curvature_report(spec);
  if (holds) {
    auto& e = checks.add("mean_curvature", "float", c.tol_h, rep.max_norm <= c.tol_h);
    e["x"] = xj;
    e["max_norm"] = rep.max_norm;
    e["h"] = spec.h;
    e["nodes"] = rep.samples.size();
    e["discretization_error"] = rep.discretization_error;
    e["codimension"] = spec.codimension();
  } else {
    auto& e = checks.add("mean_curvature_negative_control", "float", c.control_min, rep.max_norm >= c.control_min);
    e["x"] = xj;
    e["max_norm"] = rep.max_norm;
    e["h"] = spec.h;
  }
  if (holds && with_halving) {
    ImmersionSpec half = spec;
    half.h = spec.h / 2;
    const auto rep2 = curvature_report(half);
    const double ratio = rep2.max_norm > 0.0 ? rep.max_norm / rep2.max_norm : std::numeric_limits<double>::infinity();
    auto& e = checks.add("mean_curvature_halving", "float", 2.0, ratio >= 2.0);
    e["x"] = xj;
    e["max_norm_h"] = rep.max_norm;
    e["max_norm_h_over_2"] = rep2.max_norm;
    e["ratio"] = std::isfinite(ratio) ? Json(ratio) : Json("inf");
  }
  const auto base = curvature_report(spec, false);
  auto& be = checks.add("baseline_mean_curvature", "float", c.tol_baseline, base.max_norm <= c.tol_baseline);
  be["x"] = xj;
  be["max_norm"] = base.max_norm;

  if (!with_distance) return;
  ImmersionSpec coarse = spec;
  for (auto& axis : coarse.y_axes) axis.steps = 3;
  const auto ys = y_grid(coarse);
  const auto dl = distance_law_check(spec, c.t_samples, ys, c.slack);
  auto& de = checks.add("distance_law", "float", c.slack, dl.passed(), holds);
  de["x"] = xj;
  de["speed"] = dl.speed;
  de["geodesic_residual"] = dl.geodesic_residual;
  de["geodesic_ok"] = dl.geodesic_ok;
  de["min_margin"] = dl.min_margin;
  de["foot_gap"] = dl.foot_gap;
  de["separation_ok"] = dl.separation_ok;
  de["minimum_at_zero_ok"] = dl.minimum_at_zero_ok;
  de["monotonicity_violation"] = dl.monotonicity_violation;
  de["y_samples"] = ys.size();

  const auto& m = *model;
  const Eigen::VectorXd unit_x = spec.x / m.b_norm(spec.x);
  const double speed = geodesic_speed_residual(m, unit_x, {-4.0, -1.0, -0.5, 0.5, 1.0, 2.0, 4.0});
  checks.add("geodesic_speed", "float", 1e-9, speed <= 1e-9)["residual"] = speed;

  double iso = 0.0;
  for (double t : c.t_samples) {
    for (std::size_t i = 0; i + 1 < ys.size(); i += 2) {
      iso = std::max(iso, transvection_isometry_residual(m, spec.x, t, immersion_point(spec, 0.0, ys[i]),
                                                         immersion_point(spec, 0.3, ys[i + 1])));
    }
  }
  checks.add("transvection_isometry", "float", 1e-9, iso <= 1e-9)["residual"] = iso;

  double chart = 0.0;
  for (const auto& y : ys) chart = std::max(chart, chart_roundtrip_residual(m, immersion_coords(spec, 0.7, y)));
  checks.add("chart_roundtrip", "float", 1e-12, chart <= 1e-12)["residual"] = chart;

  double pairing = 0.0;
  for (const auto& y : ys) pairing = std::max(pairing, transported_normal_pairing(spec, y));
  checks.add("transported_normality", "float", 1e-8, pairing <= 1e-8)["max_pairing"] = pairing;

  if (!spec.s_frame.empty()) {
    const bool mono = distance_nondecreasing(m, spec.s_frame[0], unit_x, {0.0, 0.25, 0.5, 1.0, 2.0, 3.0});
    checks.add("distance_nondecreasing", "float", 1e-12, mono);
  }
}

void cmd_construct(const RunConfig& c, Context& ctx, Checks& checks, Json& data) {
  load_subspace(c, ctx);
  data["s"] = subspace_json(*ctx.s, ctx.s_name);
  if (!lts_check(ctx, checks)) return;
  const auto model = model_for(ctx);
  if (ctx.xs.empty()) throw ConfigError("s has no normal directions in p");
  std::optional<ImmersionSpec> export_spec;
  if (!c.export_path.empty()) {
    export_spec =
        make_immersion_spec(model, *ctx.s, unit_scaled(*ctx.alg, ctx.xs.front()), steps_for(c, 5), c.half_width);
    export_spec->h = c.h;
    export_spec->truncation = c.truncation;
    export_spec->richardson = c.richardson;
    ensure_exportable(*export_spec, c.export_format);
  }
  for (const auto& x : ctx.xs) {
    const auto verdict = condition_holds(*ctx.s, x, c.samples, c.seed);
    auto& e = checks.add("condition_holds", "exact", 0.0, verdict.holds, false);
    e["x"] = to_json(*ctx.alg, x);
    e["holds"] = verdict.holds;
    geometry_checks(c, ctx, model, checks, x, verdict.holds, true, true);
  }
  if (export_spec) {
    export_point_cloud(*export_spec, c.export_path, c.export_format);
    data["export"] = {{"path", c.export_path}, {"format", c.export_format}, {"nodes", export_spec->node_count()}};
  }
}

void cmd_verify(const RunConfig& c, Context& ctx, Checks& checks, Json& data) {
  load_subspace(c, ctx);
  data["s"] = subspace_json(*ctx.s, ctx.s_name);
  if (!lts_check(ctx, checks)) return;
  ModelPtr model;
  if (ctx.alg->realization()) model = model_for(ctx);
  for (const auto& x : ctx.xs) {
    const auto verdict = condition_holds(*ctx.s, x, c.samples, c.seed);
    auto& e = checks.add("condition_holds", "exact", 0.0, verdict.holds);
    e["x"] = to_json(*ctx.alg, x);
    e["verdict"] = verdict_json(*ctx.alg, verdict);
    if (!verdict.holds) continue;
    lemma_and_series(c, ctx, checks, x, true);
    if (model && b_orthogonal(*ctx.s, x)) geometry_checks(c, ctx, model, checks, x, true, false, true);
  }
}

void cmd_bisector(const RunConfig& c, Context& ctx, Checks& checks, Json& data) {
  if (!ctx.entry || ctx.entry->kind != SpaceKind::complex_hyperbolic || !ctx.entry->complex_structure) {
    throw ConfigError("bisector needs a complex hyperbolic catalog space (su{n}1, n >= 2)");
  }
  const auto& entry = *ctx.entry;
  const auto model = model_for(ctx);
  const std::size_t steps = steps_for(c, 7);
  auto spec_for = [&](const std::string& pair, const ExactVector* given) {
    const auto inst = build_pair(entry, pair);
    const ExactVector x = unit_scaled(*ctx.alg, given ? *given : sample_normals(inst.normal, 1, c.seed).front());
    auto spec = make_immersion_spec(model, inst.s, x, steps, c.half_width);
    return std::pair{spec, x};
  };
  const ExactVector* given = nullptr;
  RunConfig sub = c;
  sub.pair = "complex-hyperplane";
  load_subspace(sub, ctx);
  if (ctx.explicit_x) given = &ctx.xs.front();

  const auto [spec, x] = spec_for("complex-hyperplane", given);
  const auto rep = bisector_equidistance(spec, *entry.complex_structure, c.r);
  auto& e = checks.add("bisector_equidistance", "float", c.tol_bisector, rep.max_difference <= c.tol_bisector);
  e["pair"] = "complex-hyperplane";
  e["x"] = to_json(*ctx.alg, x);
  e["r"] = c.r;
  e["nodes"] = rep.nodes;
  e["max_difference"] = rep.max_difference;

  const auto [cspec, cx] = spec_for("real-form", nullptr);
  const auto crep = bisector_equidistance(cspec, *entry.complex_structure, c.r);
  auto& ce = checks.add("bisector_negative_control", "float", c.control_min, crep.max_difference >= c.control_min);
  ce["pair"] = "real-form";
  ce["x"] = to_json(*ctx.alg, cx);
  ce["nodes"] = crep.nodes;
  ce["max_difference"] = crep.max_difference;
  ce["worst_t"] = crep.worst_t;
  ce["worst_y"] = to_json(crep.worst_y);
  data["space"] = entry.id;
}

Json listing_json() {
  Json spaces = Json::array();
  Json unsupported = Json::array();
  std::size_t pair_count = 0;
  for (const auto& l : catalog_listing()) {
    Json j;
    j["id"] = l.id;
    j["kind"] = to_string(l.kind);
    j["n"] = l.n;
    if (!l.supported) {
      j["supported"] = false;
      unsupported.push_back(std::move(j));
      continue;
    }
    const auto e = build_space(l.id);
    j["dim_g"] = e.algebra->dim();
    j["dim_k"] = e.algebra->k_basis().size();
    j["dim_p"] = e.algebra->p_basis().size();
    j["hermitian"] = e.complex_structure.has_value();
    Json pairs = Json::array();
    for (const auto& p : e.pairs) {
      Json pj;
      pj["name"] = p.name;
      pj["description"] = p.description;
      pj["dim_s"] = p.basis.size();
      pj["extension_dim"] = p.extension_dim();
      pj["expected"] = {{"lie_triple_system", p.expected.lie_triple_system}, {"reflective", p.expected.reflective}};
      if (p.expected.totally_real) pj["expected"]["totally_real"] = *p.expected.totally_real;
      pairs.push_back(std::move(pj));
      ++pair_count;
    }
    j["pairs"] = std::move(pairs);
    spaces.push_back(std::move(j));
  }
  return {{"spaces", spaces}, {"unsupported", unsupported}, {"pair_count", pair_count}};
}

void verify_entry(const CatalogEntry& e, Checks& checks) {
  const auto v = validate_algebra(*e.algebra);
  double worst = 0.0;
  for (const auto& en : v.entries) worst = std::max(worst, en.residual);
  auto& ve = checks.add("validate_algebra", "exact", 0.0, v.passed());
  ve["space"] = e.id;
  ve["max_residual"] = worst;
  for (const auto& p : e.pairs) {
    const auto inst = build_pair(e, p.name);
    const bool lts = is_lie_triple_system(inst.s).holds;
    const auto refl = is_reflective(inst.s);
    bool ok = lts == p.expected.lie_triple_system && refl.holds == p.expected.reflective;
    Json j;
    j["lie_triple_system"] = lts;
    j["reflective"] = refl.holds;
    if (p.expected.totally_real) {
      const bool tr = is_totally_real(inst.s, *e.complex_structure).holds;
      j["totally_real"] = tr;
      ok = ok && tr == *p.expected.totally_real;
    }
    if (refl.holds) {
      const bool perp = is_reflective(inst.normal).holds;
      j["complement_reflective"] = perp;
      ok = ok && perp;
    }
    const bool dims = inst.s.dim() + inst.normal.dim() == e.algebra->p_basis().size();
    j["dim_s"] = inst.s.dim();
    j["dim_normal"] = inst.normal.dim();
    j["extension_dim"] = p.extension_dim();
    auto& pe = checks.add("pair_predicates", "exact", 0.0, ok && dims);
    pe["space"] = e.id;
    pe["pair"] = p.name;
    pe["observed"] = std::move(j);
  }
}

void cmd_catalog(const RunConfig& c, Checks& checks, Json& data) {
  if (c.list) {
    data["catalog"] = listing_json();
    return;
  }
  if (!c.space.empty()) {
    verify_entry(build_space(c.space), checks);
    return;
  }
  for (const auto& l : catalog_listing())
    if (l.supported) verify_entry(build_space(l.id), checks);
}

}  // namespace

RunResult run(const RunConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  Checks checks;
  Json data = Json::object();
  Context ctx;
  try {
    if (config.command == Command::catalog) {
      cmd_catalog(config, checks, data);
    } else {
      load_algebra(config, ctx);
      data["algebra"] = {{"name", ctx.alg->name()},
                         {"dim", ctx.alg->dim()},
                         {"dim_k", ctx.alg->k_basis().size()},
                         {"dim_p", ctx.alg->p_basis().size()}};
      switch (config.command) {
        case Command::check: cmd_check(config, ctx, checks, data); break;
        case Command::lemma: cmd_lemma(config, ctx, checks, data); break;
        case Command::roots: cmd_roots(config, ctx, checks, data); break;
        case Command::construct: cmd_construct(config, ctx, checks, data); break;
        case Command::verify: cmd_verify(config, ctx, checks, data); break;
        case Command::bisector: cmd_bisector(config, ctx, checks, data); break;
        case Command::catalog: break;
      }
    }
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }

  RunResult result;
  result.status = checks.failed() == 0 ? 0 : 1;
  Json& r = result.report;
  r["schema"] = 1;
  r["artifact"] = "transvector";
  r["version"] = kArtifactVersion;
  r["config"] = config.echo();
  r["data"] = std::move(data);
  r["checks"] = checks.to_json();
  r["summary"] = {{"required", checks.required()},
                  {"failed", checks.failed()},
                  {"passed", checks.failed() == 0},
                  {"status", result.status}};
  r["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!config.out.empty()) write_text_atomic(config.out, r.dump(2) + "\n");
  return result;
}

}  // namespace transvector
