#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hullbeam/experiment.hpp"

using namespace hullbeam;
using namespace hullbeam::experiment;

namespace {

ExperimentSpec tiny_spec(const std::string& out) {
  ExperimentSpec s = desk_preset();
  s.scenario.M = 4;
  s.sweep_n = {6, 8};
  s.sweep_u = {2};
  s.sweep_k = {2};
  s.trials = 2;
  s.algorithms = {Algorithm::ChrApgda, Algorithm::RandomSearch};
  s.solver.T1 = 1;
  s.solver.T2 = 60;
  s.baseline.random_draws = 4;
  s.out_dir = out;
  return s;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// The runtime_ms column is wall-clock measurement and cannot reproduce; a
// comparison of everything else is the deterministic contract.
std::string mask_runtime(const std::string& csv, int column) {
  std::stringstream out;
  std::stringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    std::stringstream ls(line);
    std::string field;
    int i = 0;
    while (std::getline(ls, field, ',')) {
      if (i > 0) out << ',';
      out << (i == column ? "-" : field);
      ++i;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

TEST_CASE("algorithm names round-trip") {
  for (Algorithm a :
       {Algorithm::ChrApgda, Algorithm::Gda, Algorithm::Riemannian,
        Algorithm::RandomSearch, Algorithm::Exhaustive}) {
    CHECK(algorithm_from_string(to_string(a)) == a);
  }
  CHECK_THROWS_AS(algorithm_from_string("nope"), std::invalid_argument);
}

TEST_CASE("spec validation reports the field path") {
  ExperimentSpec s = desk_preset();
  s.trials = 0;
  try {
    s.resolve();
    FAIL("expected throw");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("trials") != std::string::npos);
  }
  ExperimentSpec s2 = desk_preset();
  s2.sweep_k = {1};
  CHECK_THROWS_AS(s2.resolve(), std::invalid_argument);
}

TEST_CASE("dbm conversion happens at resolve") {
  ExperimentSpec s = desk_preset();
  s.resolve();
  CHECK(s.power_watt == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.noise_watt == doctest::Approx(1e-12).epsilon(1e-12));
  // Baseline counts inherit the solver's.
  CHECK(s.baseline.iterations == s.solver.T2);
  CHECK(s.baseline.outer_rounds == s.solver.T1);
}

TEST_CASE("single point, single trial, single algorithm yields one row") {
  ExperimentSpec s = tiny_spec("unused");
  s.sweep_n = {6};
  s.trials = 1;
  s.algorithms = {Algorithm::RandomSearch};
  std::vector<ResultRow> rows = run_experiment(s);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].N == 6);
  CHECK(rows[0].U == 2);
  CHECK(rows[0].K == 2);
  CHECK(rows[0].M == 4);
  CHECK(rows[0].inner_iterations == 4);
  CHECK(rows[0].min_sinr_db ==
        doctest::Approx(rows[0].per_user_sinr_db.minCoeff()).epsilon(1e-12));
}

TEST_CASE("paired design and canonical ordering") {
  ExperimentSpec s = tiny_spec("unused");
  std::vector<ResultRow> rows = run_experiment(s);
  // 2 points x 2 trials x 2 algorithms, algorithms name-sorted per trial.
  REQUIRE(rows.size() == 8);
  for (size_t i = 0; i < rows.size(); i += 2) {
    CHECK(to_string(rows[i].algorithm) == "chr_apgda");
    CHECK(to_string(rows[i + 1].algorithm) == "random");
    CHECK(rows[i].seed == rows[i + 1].seed);  // pairing contract
    CHECK(rows[i].N == rows[i + 1].N);
    CHECK(rows[i].trial == rows[i + 1].trial);
  }
  CHECK(rows[0].N == 6);
  CHECK(rows[4].N == 8);
  CHECK(rows[0].trial == 0);
  CHECK(rows[2].trial == 1);
  // Same trial index at different points shares the seed.
  CHECK(rows[0].seed == rows[4].seed);
}

TEST_CASE("emitted files are deterministic and re-loadable") {
  namespace fs = std::filesystem;
  fs::path tmp = fs::temp_directory_path() / "hullbeam_test_out";
  fs::remove_all(tmp);

  ExperimentSpec s = tiny_spec((tmp / "a").string());
  std::vector<ResultRow> rows = run_experiment(s);
  emit_outputs(rows, s);

  std::string raw = slurp((tmp / "a" / "results.csv").string());
  CHECK(raw.rfind(kRawHeader, 0) == 0);
  std::string summary = slurp((tmp / "a" / "summary.csv").string());
  CHECK(summary.rfind(kSummaryHeader, 0) == 0);

  // Re-run from scratch: identical bytes outside the runtime column.
  std::vector<ResultRow> rows2 = run_experiment(s);
  ExperimentSpec s2 = s;
  s2.out_dir = (tmp / "b").string();
  emit_outputs(rows2, s2);
  CHECK(mask_runtime(raw, 8) ==
        mask_runtime(slurp((tmp / "b" / "results.csv").string()), 8));
  CHECK(mask_runtime(summary, 8) ==
        mask_runtime(slurp((tmp / "b" / "summary.csv").string()), 8));

  // The manifest reloads as a config and reproduces the spec.
  ExperimentSpec from_manifest =
      load_config((tmp / "a" / "manifest.txt").string(), desk_preset());
  from_manifest.resolve();
  CHECK(from_manifest.sweep_n == s.sweep_n);
  CHECK(from_manifest.trials == s.trials);
  CHECK(from_manifest.solver.T2 == s.solver.T2);
  CHECK(from_manifest.master_seed == s.master_seed);
  std::vector<ResultRow> rows3 = run_experiment(from_manifest);
  REQUIRE(rows3.size() == rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows3[i].min_sinr_db == rows[i].min_sinr_db);
    CHECK(rows3[i].seed == rows[i].seed);
  }

  // Aggregate sanity: a single-row group reports its own value with zero
  // spread.
  ExperimentSpec s1 = tiny_spec((tmp / "c").string());
  s1.sweep_n = {6};
  s1.trials = 1;
  s1.algorithms = {Algorithm::RandomSearch};
  std::vector<ResultRow> one = run_experiment(s1);
  emit_outputs(one, s1);
  std::string sum1 = slurp((tmp / "c" / "summary.csv").string());
  char expect[128];
  std::snprintf(expect, sizeof(expect), "random,6,2,2,4,1,%.17g,0,",
                one[0].min_sinr_db);
  CHECK(sum1.find(expect) != std::string::npos);

  fs::remove_all(tmp);
}

TEST_CASE("config parsing") {
  std::istringstream in(
      "# comment\n"
      "trials = 3\n"
      "sweep.n = 4, 8\n"
      "solver.t2 = 25\n"
      "scenario.m = 5\n"
      "algorithms = random\n"
      "manifest.anything = ignored\n"
      "power_dbm = 20\n");
  ExperimentSpec s = parse_config_text(in, "<test>", desk_preset());
  CHECK(s.trials == 3);
  CHECK(s.sweep_n == std::vector<int>{4, 8});
  CHECK(s.solver.T2 == 25);
  CHECK(s.scenario.M == 5);
  CHECK(s.algorithms.size() == 1);
  CHECK(s.power_dbm == 20.0);

  std::istringstream bad("nonsense.key = 1\n");
  try {
    parse_config_text(bad, "<test>", desk_preset());
    FAIL("expected throw");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("nonsense.key") != std::string::npos);
    CHECK(std::string(e.what()).find("<test>:1") != std::string::npos);
  }

  std::istringstream badv("trials = many\n");
  CHECK_THROWS_AS(parse_config_text(badv, "<t>", desk_preset()),
                  std::invalid_argument);
  std::istringstream noeq("trials 3\n");
  CHECK_THROWS_AS(parse_config_text(noeq, "<t>", desk_preset()),
                  std::invalid_argument);
}

TEST_CASE("presets") {
  ExperimentSpec desk = desk_preset();
  CHECK(desk.scenario.M == 8);
  CHECK(desk.sweep_n == std::vector<int>{32, 64, 128});
  ExperimentSpec paper = preset_by_name("paper");
  CHECK(paper.scenario.M == 64);
  CHECK(paper.sweep_n.back() == 500);
  CHECK_THROWS_AS(preset_by_name("galaxy"), std::invalid_argument);
}
