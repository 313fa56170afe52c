#include "support.hpp"
#include "transvector/alg_file.hpp"
#include "transvector/report.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace transvector;

namespace {

RunConfig config(Command c, const std::string& space, const std::string& pair = "") {
  RunConfig r;
  r.command = c;
  r.space = space;
  r.pair = pair;
  return r;
}

const Json* find_check(const Json& report, const std::string& name) {
  for (const auto& c : report["checks"])
    if (c["name"] == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("catalog ids and listing") {
  CHECK(build_space("su21").algebra->dim() == 8);
  CHECK(build_space("su31").algebra->dim() == 15);
  CHECK(build_space("so31").algebra->dim() == 6);
  CHECK(build_space("sl3r").algebra->dim() == 8);
  CHECK(build_space(SpaceKind::complex_hyperbolic, 2).id == "su21");
  CHECK_THROWS_AS(build_space("sp21"), UnsupportedSpace);
  CHECK_THROWS_AS(build_space("cay"), UnsupportedSpace);
  CHECK_THROWS_AS(build_space("xx9"), std::invalid_argument);
  CHECK_THROWS_AS(build_space("su21").pair("nope"), std::invalid_argument);

  const auto listing = catalog_listing();
  std::size_t supported = 0;
  for (const auto& l : listing) supported += l.supported ? 1 : 0;
  CHECK(supported == 3);
  CHECK(listing.size() == 5);
  for (const auto& p : build_space("su21").pairs) CHECK(p.extension_dim() == p.basis.size() + 1);
}

TEST_CASE("vector specs") {
  const auto e = build_space("su21");
  const auto& a = *e.algebra;
  const auto v = parse_vector_spec(a, "P1:1/2, Q2:-3");
  CHECK(v[a.index_of("P1")] == Rational(1, 2));
  CHECK(v[a.index_of("Q2")] == -3);
  const auto w = parse_vector_spec(a, "0,0,0,0,1,0,0,0");
  CHECK(w[4] == 1);
  CHECK_THROWS_AS(parse_vector_spec(a, "1,2"), ConfigError);
  CHECK_THROWS_AS(parse_vector_spec(a, "Z9:1"), ConfigError);
  CHECK_THROWS_AS(parse_vector_spec(a, "P1:x"), ConfigError);
  CHECK(vector_from_json(a, Json::parse(R"({"P1": "2/3"})"))[a.index_of("P1")] == Rational(2, 3));
  CHECK(to_json(a, v) == Json::parse(R"({"P1": "1/2", "Q2": "-3"})"));
}

TEST_CASE("sampled normals are nonzero, normal and reproducible") {
  const auto e = build_space("su31");
  const auto inst = build_pair(e, "complex-hyperplane");
  const auto xs = sample_normals(inst.normal, 5, 1);
  CHECK(xs.size() == 5);
  for (const auto& x : xs) {
    CHECK_FALSE(x.is_zero());
    CHECK(inst.normal.contains(x).member);
  }
  CHECK(sample_normals(inst.normal, 5, 1) == xs);
  CHECK_FALSE(sample_normals(inst.normal, 5, 2) == xs);
}

TEST_CASE("report envelope") {
  const auto r = run(config(Command::check, "su21", "complex-hyperplane"));
  CHECK(r.status == 0);
  const auto& j = r.report;
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"schema", "artifact", "version", "config", "data", "checks", "summary",
                                         "wall_time_s"});
  CHECK(j["schema"] == 1);
  CHECK(j["version"] == kArtifactVersion);
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("mode"));
    CHECK(c.contains("tolerance"));
  }
  CHECK(j["summary"]["failed"] == 0);
  CHECK(stable_dump(j).find("wall_time_s") == std::string::npos);
}

TEST_CASE("reports are deterministic across runs and thread counts") {
  auto c = config(Command::lemma, "su21", "real-form");
  c.samples = 16;
  ::setenv("TRANSVECTOR_THREADS", "1", 1);
  const auto one = stable_dump(run(c).report);
  ::setenv("TRANSVECTOR_THREADS", "3", 1);
  const auto three = stable_dump(run(c).report);
  ::unsetenv("TRANSVECTOR_THREADS");
  CHECK(one == three);
  CHECK(one == stable_dump(run(c).report));
  c.seed = 2;
  CHECK(one != stable_dump(run(c).report));
}

TEST_CASE("failing condition exits with status one and a witness") {
  auto c = config(Command::verify, "sl3r");
  c.s_file = tvtest::fixture("custom.json").string();
  c.x = "bad";
  const auto r = run(c);
  CHECK(r.status == 1);
  const auto* check = find_check(r.report, "condition_holds");
  REQUIRE(check);
  CHECK((*check)["passed"] == false);
  CHECK((*check)["verdict"].contains("witness"));
  c.x = "good";
  CHECK(run(c).status == 0);
}

TEST_CASE("configuration errors") {
  CHECK_THROWS_AS(run(config(Command::check, "")), ConfigError);
  CHECK_THROWS_AS(run(config(Command::check, "su21")), ConfigError);
  CHECK_THROWS_AS(run(config(Command::check, "su21", "nope")), std::invalid_argument);
  auto c = config(Command::check, "su21", "real-form");
  c.tol_h = -1;
  CHECK_THROWS_AS(run(c), ConfigError);
  c = config(Command::check, "su21", "real-form");
  c.x = "K9:1";
  CHECK_THROWS_AS(run(c), ConfigError);
  c = config(Command::check, "su21", "real-form");
  c.x = "A12:1";
  CHECK_THROWS_AS(run(c), std::invalid_argument);
  CHECK_THROWS_AS(run(config(Command::bisector, "sl3r")), ConfigError);
  CHECK_THROWS_AS(parse_command("frobnicate"), ConfigError);
  c = config(Command::roots, "");
  c.algebra_file = tvtest::fixture("sl2r_bad_jacobi.alg").string();
  CHECK_THROWS_AS(run(c), AlgebraValidationError);
}

TEST_CASE("algebra files drive the pipeline") {
  auto c = config(Command::roots, "");
  c.algebra_file = tvtest::fixture("sl2r.alg").string();
  const auto r = run(c);
  CHECK(r.status == 0);
  CHECK(r.report["data"]["positive_roots"].size() == 1);
}

TEST_CASE("catalog command") {
  auto c = config(Command::catalog, "");
  c.list = true;
  const auto listing = run(c).report["data"]["catalog"];
  CHECK(listing["spaces"].size() == 3);
  CHECK(listing["unsupported"].size() == 2);
  c.list = false;
  const auto r = run(c);
  CHECK(r.status == 0);
  CHECK(r.report["summary"]["required"].get<int>() > 3);
}

TEST_CASE("reports are written atomically") {
  const auto path = std::filesystem::temp_directory_path() / "transvector_test_report.json";
  std::filesystem::remove(path);
  auto c = config(Command::roots, "su21");
  c.out = path.string();
  const auto r = run(c);
  std::ifstream in(path);
  const auto j = Json::parse(in);
  CHECK(j["summary"] == r.report["summary"]);
  CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  std::filesystem::remove(path);
}
