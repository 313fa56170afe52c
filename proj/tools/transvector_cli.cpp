#include "transvector/alg_file.hpp"
#include "transvector/report.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace transvector;

namespace {

enum Exit { kPass = 0, kFail = 1, kConfig = 2, kBreakdown = 3 };

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--space", c.space, "catalog space id (su21, so31, sl3r, ...)");
  sub->add_option("--algebra", c.algebra_file, "algebra definition file")->check(CLI::ExistingFile);
  sub->add_option("--pair", c.pair, "catalog pair name");
  sub->add_option("--s", c.s_file, "JSON file with the subspace s")->check(CLI::ExistingFile);
  sub->add_option("--x", c.x, "normal vector: name from the s file, label:q,... or d rationals");
  sub->add_option("--seed", c.seed);
  sub->add_option("--samples", c.samples, "random Y per test");
  sub->add_option("--normals", c.normals, "sampled normals when --x is absent");
  sub->add_option("--n-max", c.n_max);
  sub->add_option("--m-max", c.m_max);
  sub->add_option("--truncation", c.truncation, "series truncation order K");
  sub->add_option("--steps", c.steps, "grid points per axis");
  sub->add_option("--half-width", c.half_width);
  sub->add_option("--fd-step", c.h, "finite-difference step h");
  sub->add_flag("--richardson", c.richardson);
  sub->add_option("--tol-h", c.tol_h);
  sub->add_option("--tol-baseline", c.tol_baseline);
  sub->add_option("--tol-bisector", c.tol_bisector);
  sub->add_option("--control-min", c.control_min);
  sub->add_option("--slack", c.slack);
  sub->add_option("--r", c.r, "bisector focus distance");
  sub->add_option("--t-samples", c.t_samples)->delimiter(',');
  sub->add_option("--out", c.out, "write the JSON report here instead of stdout");
  sub->add_option("--export", c.export_path, "point cloud output path");
  sub->add_option("--export-format", c.export_format)->check(CLI::IsMember({"csv", "ply"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Totally geodesic extensions along normal transvections"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kArtifactVersion));
  RunConfig config;
  const std::vector<std::pair<Command, const char*>> commands{
      {Command::check, "decide the extension condition for (s, X)"},
      {Command::lemma, "check the algebraic lemma and the nabla_Z Z series"},
      {Command::roots, "restricted root decomposition and root-space examples"},
      {Command::construct, "build the transvection immersion and measure its mean curvature"},
      {Command::verify, "full pipeline for one pair"},
      {Command::bisector, "equidistance of the complex-hyperplane extension"},
      {Command::catalog, "list or verify the catalog"}};
  for (const auto& [cmd, help] : commands) {
    auto* sub = app.add_subcommand(to_string(cmd), help);
    add_common(sub, config);
    if (cmd == Command::catalog) sub->add_flag("--list", config.list, "print the catalog listing");
    sub->callback([&config, c = cmd] { config.command = c; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    const RunResult result = run(config);
    if (config.out.empty()) {
      std::cout << result.report.dump(2) << '\n';
    } else {
      const auto& s = result.report["summary"];
      std::cerr << to_string(config.command) << ": " << (result.status == 0 ? "pass" : "FAIL") << " ("
                << s["failed"].get<std::size_t>() << " of " << s["required"].get<std::size_t>()
                << " required checks failed), report " << config.out << '\n';
    }
    return result.status == 0 ? kPass : kFail;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const AlgebraValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const NumericalBreakdown& e) {
    std::cerr << "numerical breakdown: " << e.what() << '\n';
    return kBreakdown;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kConfig;
}
