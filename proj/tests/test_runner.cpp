#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rwave/energy.hpp"
#include "rwave/runner.hpp"
#include "rwave/scenario.hpp"

using namespace rwave;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool throws_scenario_error_containing(const std::string& text, const std::string& needle) {
  try {
    (void)parse_scenario(text, "probe.scn");
  } catch (const ScenarioError& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

const char* kRandomEvolve =
    "schema_version = 1\n"
    "experiment = evolve\n"
    "seed = 7\n"
    "[potential]\n"
    "kind = manufactured_star\n"
    "[data]\n"
    "kind = random_bumps\n"
    "r_max = 10\n"
    "[solver]\n"
    "h = 0.02\n"
    "T = 2\n";

}  // namespace

TEST_CASE("serialization is a fixed point of parsing") {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator("scenarios"))
    if (e.path().extension() == ".scn") files.push_back(e.path());
  REQUIRE(files.size() >= 8);
  for (const auto& p : files) {
    INFO("scenario " << p.string());
    const Scenario sc = parse_scenario(slurp(p), p.string());
    const std::string once = serialize_scenario(sc);
    const Scenario sc2 = parse_scenario(once, p.string());
    CHECK(serialize_scenario(sc2) == once);
  }
}

TEST_CASE("parse failures carry the file name and line number") {
  try {
    (void)load_scenario("tests/data/malformed.scn");
    FAIL("expected a parse failure");
  } catch (const ScenarioError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("malformed.scn") != std::string::npos);
    CHECK(msg.find("snapshot") != std::string::npos);
  }
}

TEST_CASE("scenario validation rejects contradictory inputs") {
  CHECK(throws_scenario_error_containing(
      "schema_version = 1\nexperiment = dance\n", "dance"));
  CHECK(throws_scenario_error_containing(
      "schema_version = 1\n"
      "experiment = channel-test\n"
      "[potential]\n"
      "kind = gaussian\n",
      "potential"));
  CHECK(throws_scenario_error_containing(
      "schema_version = 1\n"
      "experiment = channel-test\n"
      "[solver]\n"
      "h = 0.01\n",
      "solver"));
  CHECK(throws_scenario_error_containing(
      "schema_version = 1\n"
      "experiment = steady-census\n"
      "[potential]\n"
      "kind = manufactured_star\n"
      "[solver]\n"
      "h = 0.01\n",
      "solver"));
  CHECK(throws_scenario_error_containing(
      "schema_version = 1\n"
      "experiment = evolve\n"
      "[data]\n"
      "kind = gaussian\n"
      "kind = bump\n",
      "kind"));
}

TEST_CASE("record bodies are reproducible and seed-sensitive") {
  const Scenario sc = parse_scenario(kRandomEvolve, "inline");
  const RunOutcome a = run_scenario(sc);
  const RunOutcome b = run_scenario(sc);
  REQUIRE(a.record.contains("body"));
  CHECK(a.record["body"].dump() == b.record["body"].dump());

  Scenario other = sc;
  other.seed = 8;
  const RunOutcome c = run_scenario(other);
  CHECK(a.record["body"].dump() != c.record["body"].dump());
}

TEST_CASE("deterministic data builders") {
  const Potential V = Potential::manufactured_star();

  SUBCASE("zero") {
    DataSpec d;
    d.kind = "zero";
    d.r_max = 5.0;
    const ReducedState s = build_data(d, 0.01, V, 0);
    for (double x : s.v) CHECK(x == 0.0);
    for (double x : s.vt) CHECK(x == 0.0);
  }

  SUBCASE("gaussian matches its closed form") {
    DataSpec d;
    d.kind = "gaussian";
    d.r_max = 5.0;
    d.amplitude = 0.7;
    d.width = 1.3;
    const ReducedState s = build_data(d, 0.01, V, 0);
    for (std::size_t j = 0; j < s.grid.n; ++j) {
      const double r = s.grid.r(j);
      CHECK(s.v[j] == 0.7 * r * std::exp(-(r / 1.3) * (r / 1.3)));
      CHECK(s.vt[j] == 0.0);
    }
  }

  SUBCASE("bump is normalized to the requested size") {
    DataSpec d;
    d.kind = "bump";
    d.r_max = 10.0;
    d.r_lo = 2.0;
    d.r_hi = 4.0;
    d.norm = 0.3;
    const ReducedState s = build_data(d, 0.01, V, 0);
    const ReducedState z = ReducedState::zero(s.grid);
    CHECK(annulus_distance(s, z, 0.0, s.grid.r_max()) ==
          doctest::Approx(0.3).epsilon(1e-12));
    for (std::size_t j = 0; j < s.grid.n; ++j) {
      const double r = s.grid.r(j);
      if (r <= 2.0 || r >= 4.0) CHECK(s.v[j] == 0.0);
    }
  }

  SUBCASE("random data is seed-deterministic") {
    DataSpec d;
    d.kind = "random_bumps";
    d.r_max = 10.0;
    const ReducedState s1 = build_data(d, 0.01, V, 11);
    const ReducedState s2 = build_data(d, 0.01, V, 11);
    const ReducedState s3 = build_data(d, 0.01, V, 12);
    REQUIRE(s1.v.size() == s2.v.size());
    for (std::size_t j = 0; j < s1.v.size(); ++j) {
      CHECK(s1.v[j] == s2.v[j]);
      CHECK(s1.vt[j] == s2.vt[j]);
    }
    bool differs = false;
    for (std::size_t j = 0; j < s1.v.size(); ++j)
      if (s1.v[j] != s3.v[j] || s1.vt[j] != s3.vt[j]) differs = true;
    CHECK(differs);
  }

  SUBCASE("missing data file is an error") {
    DataSpec d;
    d.kind = "file";
    d.file = "/nonexistent/nowhere.dat";
    CHECK_THROWS(build_data(d, 0.01, V, 0));
  }
}

TEST_CASE("outcome persistence and plot-data extraction") {
  const Scenario sc = parse_scenario(kRandomEvolve, "inline");
  const RunOutcome out = run_scenario(sc);

  const fs::path dir = fs::temp_directory_path() / "rwave_runner_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  write_outcome(out, dir.string());

  const fs::path rec = dir / "record.json";
  REQUIRE(fs::exists(rec));

  // single-line JSON with the meta/body split
  const std::string text = slurp(rec);
  CHECK(std::count(text.begin(), text.end(), '\n') <= 1);
  const auto parsed = nlohmann::ordered_json::parse(text);
  CHECK(parsed.contains("meta"));
  CHECK(parsed.contains("body"));
  REQUIRE(parsed["body"].contains("results"));

  // at least one sidecar table exists next to the record
  bool saw_dat = false;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".dat") saw_dat = true;
  CHECK(saw_dat);

  SUBCASE("series export") {
    std::string series;
    for (const auto& [key, val] : parsed["body"]["results"].items())
      if (val.is_array() && !val.empty()) {
        series = key;
        break;
      }
    REQUIRE_FALSE(series.empty());
    const fs::path tab = dir / "series.txt";
    emit_plot_data(rec.string(), series, tab.string());
    REQUIRE(fs::exists(tab));
    std::ifstream in(tab);
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind("#", 0) == 0);
    double x = 0.0;
    in >> x;
    CHECK(in.good());
    CHECK_THROWS(emit_plot_data(rec.string(), "no_such_series", (dir / "x.txt").string()));
  }

  fs::remove_all(dir);
}

TEST_CASE("built-in invariant battery is clean") {
  std::ostringstream log;
  CHECK(run_check(log) == 0);
  CHECK_FALSE(log.str().empty());
}
