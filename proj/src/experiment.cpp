#include "hullbeam/experiment.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hullbeam/rng.hpp"

namespace hullbeam::experiment {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::ChrApgda: return "chr_apgda";
    case Algorithm::Gda: return "gda";
    case Algorithm::Riemannian: return "riemannian";
    case Algorithm::RandomSearch: return "random";
    case Algorithm::Exhaustive: return "exhaustive";
  }
  return "unknown";
}

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "chr_apgda") return Algorithm::ChrApgda;
  if (s == "gda") return Algorithm::Gda;
  if (s == "riemannian") return Algorithm::Riemannian;
  if (s == "random") return Algorithm::RandomSearch;
  if (s == "exhaustive") return Algorithm::Exhaustive;
  throw std::invalid_argument("unknown algorithm '" + s + "'");
}

void ExperimentSpec::resolve() {
  power_watt = dbm_to_watt(power_dbm);
  noise_watt = dbm_to_watt(noise_dbm);
  if (baseline.iterations == 0) baseline.iterations = std::max(solver.T2, 1);
  if (baseline.outer_rounds == 0) baseline.outer_rounds = solver.T1;
  validate();
}

namespace {
void require(bool ok, const std::string& path, const std::string& why) {
  if (!ok) {
    throw std::invalid_argument("ExperimentSpec: field " + path + ": " + why);
  }
}
}  // namespace

void ExperimentSpec::validate() const {
  require(!sweep_n.empty(), "sweep.n", "must be nonempty");
  require(!sweep_u.empty(), "sweep.u", "must be nonempty");
  require(!sweep_k.empty(), "sweep.k", "must be nonempty");
  for (int n : sweep_n) require(n >= 1, "sweep.n", "entries must be >= 1");
  for (int u : sweep_u) require(u >= 1, "sweep.u", "entries must be >= 1");
  for (int k : sweep_k) require(k >= 2, "sweep.k", "entries must be >= 2");
  require(trials >= 1, "trials", "must be >= 1");
  require(!algorithms.empty(), "algorithms", "must be nonempty");
  require(power_watt > 0.0, "power_dbm", "must be finite");
  require(noise_watt > 0.0, "noise_dbm", "must be finite");
  require(!out_dir.empty(), "out", "must be nonempty");
  scenario.validate();
  solver.validate();
  baseline.validate();
}

ExperimentSpec desk_preset() {
  ExperimentSpec s;
  s.scenario.M = 8;
  s.sweep_n = {32, 64, 128};
  s.sweep_u = {2, 4, 6};
  s.sweep_k = {2, 4};
  s.trials = 20;
  s.algorithms = {Algorithm::ChrApgda, Algorithm::Gda, Algorithm::Riemannian};
  return s;
}

ExperimentSpec paper_preset() {
  ExperimentSpec s;
  s.scenario.M = 64;
  s.sweep_n = {100, 300, 500};
  s.sweep_u = {5, 9, 15};
  s.sweep_k = {2, 4};
  s.trials = 20;
  s.algorithms = {Algorithm::ChrApgda, Algorithm::Gda, Algorithm::Riemannian};
  return s;
}

ExperimentSpec preset_by_name(const std::string& name) {
  if (name == "desk") return desk_preset();
  if (name == "paper") return paper_preset();
  throw std::invalid_argument("unknown preset '" + name + "'");
}

namespace {

struct SweepPoint {
  int N, U, K;
};

std::vector<SweepPoint> sweep_points(const ExperimentSpec& spec) {
  std::vector<SweepPoint> pts;
  for (int n : spec.sweep_n) {
    for (int u : spec.sweep_u) {
      for (int k : spec.sweep_k) {
        pts.push_back({n, u, k});
      }
    }
  }
  return pts;
}

solver::TrialResult dispatch(Algorithm algo, const ExperimentSpec& spec,
                             const channel::ScenarioConfig& sc,
                             const channel::ChannelSet& channels,
                             const RVec& sigma2, int K, Rng& algo_rng) {
  switch (algo) {
    case Algorithm::ChrApgda:
      return solver::solve(channels, sc, spec.solver, spec.power_watt, sigma2,
                           K, spec.init, &algo_rng);
    case Algorithm::Gda:
      return baselines::solve_gda_full(channels, spec.power_watt, sigma2, K,
                                       spec.baseline);
    case Algorithm::Riemannian:
      return baselines::solve_unit_circle_full(channels, spec.power_watt,
                                               sigma2, K, spec.baseline);
    case Algorithm::RandomSearch:
      return baselines::solve_random(channels, spec.power_watt, sigma2, K,
                                     spec.baseline.random_draws, algo_rng);
    case Algorithm::Exhaustive:
      return baselines::solve_exhaustive(channels, spec.power_watt, sigma2, K,
                                         sc.N, sc.U);
  }
  throw std::logic_error("dispatch: unreachable");
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec_in) {
  ExperimentSpec spec = spec_in;
  spec.resolve();

  // Canonical output order: algorithms sorted by name within a trial.
  std::vector<Algorithm> algs = spec.algorithms;
  std::sort(algs.begin(), algs.end(), [](Algorithm a, Algorithm b) {
    return to_string(a) < to_string(b);
  });

  const std::vector<SweepPoint> pts = sweep_points(spec);
  const long n_tasks = static_cast<long>(pts.size()) * spec.trials;
  const int n_algs = static_cast<int>(algs.size());
  std::vector<ResultRow> rows(static_cast<size_t>(n_tasks) * n_algs);

#pragma omp parallel for schedule(dynamic)
  for (long task = 0; task < n_tasks; ++task) {
    const SweepPoint& pt = pts[task / spec.trials];
    const int trial = static_cast<int>(task % spec.trials);
    channel::ScenarioConfig sc = spec.scenario;
    sc.N = pt.N;
    sc.U = pt.U;
    const std::uint64_t seed = derive_seed(spec.master_seed, trial);
    Rng rng(seed);
    const channel::ChannelSet channels = channel::draw_channels(sc, rng);
    const RVec sigma2 = RVec::Constant(pt.U, spec.noise_watt);

    for (int ai = 0; ai < n_algs; ++ai) {
      Rng algo_rng(derive_seed(seed, static_cast<std::uint64_t>(ai) + 1));
      const auto t0 = std::chrono::steady_clock::now();
      solver::TrialResult r =
          dispatch(algs[ai], spec, sc, channels, sigma2, pt.K, algo_rng);
      const double ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
      ResultRow row;
      row.trial = trial;
      row.algorithm = algs[ai];
      row.N = pt.N;
      row.U = pt.U;
      row.K = pt.K;
      row.M = sc.M;
      row.seed = seed;
      row.per_user_sinr_db = r.per_user_sinr_db();
      row.min_sinr_db = row.per_user_sinr_db.minCoeff();
      row.runtime_ms = ms;
      row.inner_iterations = r.iterations;
      row.converged_to_vertices = r.converged_to_vertices;
      rows[static_cast<size_t>(task) * n_algs + ai] = row;
    }
  }
  return rows;
}

namespace {

std::string fmt_real(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_ints(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

std::string fmt_vec3(const Eigen::Vector3d& v) {
  return fmt_real(v[0]) + "," + fmt_real(v[1]) + "," + fmt_real(v[2]);
}

}  // namespace

void write_manifest(std::ostream& os, const ExperimentSpec& spec) {
  os << "# hullbeam run manifest; re-loadable with --config\n";
  os << "manifest.artifact_version = " << kArtifactVersion << "\n";
  {
    std::string seeds;
    for (int t = 0; t < spec.trials; ++t) {
      if (t > 0) seeds += ",";
      seeds += std::to_string(derive_seed(spec.master_seed, t));
    }
    os << "manifest.trial_seeds = " << seeds << "\n";
  }
  os << "seed = " << spec.master_seed << "\n";
  os << "trials = " << spec.trials << "\n";
  os << "sweep.n = " << fmt_ints(spec.sweep_n) << "\n";
  os << "sweep.u = " << fmt_ints(spec.sweep_u) << "\n";
  os << "sweep.k = " << fmt_ints(spec.sweep_k) << "\n";
  {
    std::string names;
    for (size_t i = 0; i < spec.algorithms.size(); ++i) {
      if (i > 0) names += ",";
      names += to_string(spec.algorithms[i]);
    }
    os << "algorithms = " << names << "\n";
  }
  os << "power_dbm = " << fmt_real(spec.power_dbm) << "\n";
  os << "noise_dbm = " << fmt_real(spec.noise_dbm) << "\n";
  os << "out = " << spec.out_dir << "\n";
  os << "init = "
     << (spec.init == solver::InitMode::Random ? "random" : "ones") << "\n";

  os << "scenario.m = " << spec.scenario.M << "\n";
  os << "scenario.carrier_freq_hz = " << fmt_real(spec.scenario.carrier_freq_hz)
     << "\n";
  os << "scenario.rician_k = " << fmt_real(spec.scenario.rician_k) << "\n";
  os << "scenario.bs_position = " << fmt_vec3(spec.scenario.bs_position)
     << "\n";
  os << "scenario.irs_position = " << fmt_vec3(spec.scenario.irs_position)
     << "\n";
  os << "scenario.user_box_min = " << fmt_vec3(spec.scenario.user_box_min)
     << "\n";
  os << "scenario.user_box_max = " << fmt_vec3(spec.scenario.user_box_max)
     << "\n";
  os << "scenario.pl_bs_user.pl0_db = "
     << fmt_real(spec.scenario.pl_bs_user.pl0_db) << "\n";
  os << "scenario.pl_bs_user.exponent = "
     << fmt_real(spec.scenario.pl_bs_user.exponent) << "\n";
  os << "scenario.pl_bs_irs.pl0_db = "
     << fmt_real(spec.scenario.pl_bs_irs.pl0_db) << "\n";
  os << "scenario.pl_bs_irs.exponent = "
     << fmt_real(spec.scenario.pl_bs_irs.exponent) << "\n";
  os << "scenario.pl_irs_user.pl0_db = "
     << fmt_real(spec.scenario.pl_irs_user.pl0_db) << "\n";
  os << "scenario.pl_irs_user.exponent = "
     << fmt_real(spec.scenario.pl_irs_user.exponent) << "\n";
  os << "scenario.reference_distance_m = "
     << fmt_real(spec.scenario.reference_distance_m) << "\n";
  os << "scenario.irs_rows = " << spec.scenario.irs_rows << "\n";
  os << "scenario.irs_cols = " << spec.scenario.irs_cols << "\n";

  os << "solver.t1 = " << spec.solver.T1 << "\n";
  os << "solver.t2 = " << spec.solver.T2 << "\n";
  os << "solver.lambda_init = " << fmt_real(spec.solver.lambda_init) << "\n";
  os << "solver.lambda_growth = " << fmt_real(spec.solver.lambda_growth)
     << "\n";
  os << "solver.lambda_period = " << spec.solver.lambda_period << "\n";
  os << "solver.lambda_cap = "
     << (spec.solver.lambda_cap == solver::LambdaCapMode::EquivalenceThreshold
             ? "equiv"
             : "none")
     << "\n";
  os << "solver.alpha0 = " << fmt_real(spec.solver.alpha0) << "\n";
  os << "solver.beta0 = " << fmt_real(spec.solver.beta0) << "\n";
  os << "solver.stepsize_decay = " << fmt_real(spec.solver.stepsize_decay)
     << "\n";
  os << "solver.final_round = " << (spec.solver.final_round ? 1 : 0) << "\n";
  os << "solver.reset_stepsizes_each_outer = "
     << (spec.solver.reset_stepsizes_each_outer ? 1 : 0) << "\n";

  os << "baseline.iterations = " << spec.baseline.iterations << "\n";
  os << "baseline.outer_rounds = " << spec.baseline.outer_rounds << "\n";
  os << "baseline.step0 = " << fmt_real(spec.baseline.step0) << "\n";
  os << "baseline.step_decay = " << fmt_real(spec.baseline.step_decay) << "\n";
  os << "baseline.alpha0 = " << fmt_real(spec.baseline.alpha0) << "\n";
  os << "baseline.temperature_scale = "
     << fmt_real(spec.baseline.temperature_scale) << "\n";
  os << "baseline.temperature_halve_period = "
     << spec.baseline.temperature_halve_period << "\n";
  os << "baseline.random_draws = " << spec.baseline.random_draws << "\n";
}

namespace {

struct KeyValue {
  std::string key, value;
};

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<int> parse_int_list(const std::string& v, const std::string& key) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) continue;
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw std::invalid_argument("config field " + key + ": bad integer '" +
                                  tok + "'");
    }
  }
  if (out.empty()) {
    throw std::invalid_argument("config field " + key + ": empty list");
  }
  return out;
}

Real parse_real(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    Real r = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw std::invalid_argument("config field " + key + ": bad number '" + v +
                                "'");
  }
}

int parse_int(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    int r = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw std::invalid_argument("config field " + key + ": bad integer '" + v +
                                "'");
  }
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "1" || v == "true") return true;
  if (v == "0" || v == "false") return false;
  throw std::invalid_argument("config field " + key + ": bad boolean '" + v +
                              "'");
}

Eigen::Vector3d parse_vec3(const std::string& v, const std::string& key) {
  std::stringstream ss(v);
  std::string tok;
  Eigen::Vector3d out;
  int i = 0;
  while (std::getline(ss, tok, ',') && i < 3) {
    out[i++] = parse_real(trim(tok), key);
  }
  if (i != 3) {
    throw std::invalid_argument("config field " + key +
                                ": expected three comma-separated numbers");
  }
  return out;
}

void apply_key(ExperimentSpec& s, const std::string& key,
               const std::string& v) {
  auto& sc = s.scenario;
  auto& so = s.solver;
  auto& b = s.baseline;
  if (key.rfind("manifest.", 0) == 0) return;  // informational
  if (key == "seed") {
    s.master_seed = std::stoull(v);
  } else if (key == "trials") {
    s.trials = parse_int(v, key);
  } else if (key == "sweep.n") {
    s.sweep_n = parse_int_list(v, key);
  } else if (key == "sweep.u" || key == "sweep.users") {
    s.sweep_u = parse_int_list(v, key);
  } else if (key == "sweep.k") {
    s.sweep_k = parse_int_list(v, key);
  } else if (key == "algorithms") {
    s.algorithms.clear();
    std::stringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      tok = trim(tok);
      if (!tok.empty()) s.algorithms.push_back(algorithm_from_string(tok));
    }
  } else if (key == "power_dbm") {
    s.power_dbm = parse_real(v, key);
  } else if (key == "noise_dbm") {
    s.noise_dbm = parse_real(v, key);
  } else if (key == "out") {
    s.out_dir = v;
  } else if (key == "init") {
    if (v == "ones") {
      s.init = solver::InitMode::Ones;
    } else if (v == "random") {
      s.init = solver::InitMode::Random;
    } else {
      throw std::invalid_argument("config field init: expected ones|random");
    }
  } else if (key == "scenario.m") {
    sc.M = parse_int(v, key);
  } else if (key == "scenario.carrier_freq_hz") {
    sc.carrier_freq_hz = parse_real(v, key);
  } else if (key == "scenario.rician_k") {
    sc.rician_k = parse_real(v, key);
  } else if (key == "scenario.bs_position") {
    sc.bs_position = parse_vec3(v, key);
  } else if (key == "scenario.irs_position") {
    sc.irs_position = parse_vec3(v, key);
  } else if (key == "scenario.user_box_min") {
    sc.user_box_min = parse_vec3(v, key);
  } else if (key == "scenario.user_box_max") {
    sc.user_box_max = parse_vec3(v, key);
  } else if (key == "scenario.pl_bs_user.pl0_db") {
    sc.pl_bs_user.pl0_db = parse_real(v, key);
  } else if (key == "scenario.pl_bs_user.exponent") {
    sc.pl_bs_user.exponent = parse_real(v, key);
  } else if (key == "scenario.pl_bs_irs.pl0_db") {
    sc.pl_bs_irs.pl0_db = parse_real(v, key);
  } else if (key == "scenario.pl_bs_irs.exponent") {
    sc.pl_bs_irs.exponent = parse_real(v, key);
  } else if (key == "scenario.pl_irs_user.pl0_db") {
    sc.pl_irs_user.pl0_db = parse_real(v, key);
  } else if (key == "scenario.pl_irs_user.exponent") {
    sc.pl_irs_user.exponent = parse_real(v, key);
  } else if (key == "scenario.reference_distance_m") {
    sc.reference_distance_m = parse_real(v, key);
  } else if (key == "scenario.irs_rows") {
    sc.irs_rows = parse_int(v, key);
  } else if (key == "scenario.irs_cols") {
    sc.irs_cols = parse_int(v, key);
  } else if (key == "solver.t1") {
    so.T1 = parse_int(v, key);
  } else if (key == "solver.t2") {
    so.T2 = parse_int(v, key);
  } else if (key == "solver.lambda_init") {
    so.lambda_init = parse_real(v, key);
  } else if (key == "solver.lambda_growth") {
    so.lambda_growth = parse_real(v, key);
  } else if (key == "solver.lambda_period") {
    so.lambda_period = parse_int(v, key);
  } else if (key == "solver.lambda_cap") {
    if (v == "none") {
      so.lambda_cap = solver::LambdaCapMode::None;
    } else if (v == "equiv") {
      so.lambda_cap = solver::LambdaCapMode::EquivalenceThreshold;
    } else {
      throw std::invalid_argument(
          "config field solver.lambda_cap: expected none|equiv");
    }
  } else if (key == "solver.alpha0") {
    so.alpha0 = parse_real(v, key);
  } else if (key == "solver.beta0") {
    so.beta0 = parse_real(v, key);
  } else if (key == "solver.stepsize_decay") {
    so.stepsize_decay = parse_real(v, key);
  } else if (key == "solver.final_round") {
    so.final_round = parse_bool(v, key);
  } else if (key == "solver.reset_stepsizes_each_outer") {
    so.reset_stepsizes_each_outer = parse_bool(v, key);
  } else if (key == "baseline.iterations") {
    b.iterations = parse_int(v, key);
  } else if (key == "baseline.outer_rounds") {
    b.outer_rounds = parse_int(v, key);
  } else if (key == "baseline.step0") {
    b.step0 = parse_real(v, key);
  } else if (key == "baseline.step_decay") {
    b.step_decay = parse_real(v, key);
  } else if (key == "baseline.alpha0") {
    b.alpha0 = parse_real(v, key);
  } else if (key == "baseline.temperature_scale") {
    b.temperature_scale = parse_real(v, key);
  } else if (key == "baseline.temperature_halve_period") {
    b.temperature_halve_period = parse_int(v, key);
  } else if (key == "baseline.random_draws") {
    b.random_draws = parse_int(v, key);
  } else {
    throw std::invalid_argument("unknown config field '" + key + "'");
  }
}

}  // namespace

ExperimentSpec parse_config_text(std::istream& in, const std::string& source,
                                 ExperimentSpec base) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(source + ":" + std::to_string(lineno) +
                                  ": expected key = value");
    }
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    try {
      apply_key(base, key, value);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(source + ":" + std::to_string(lineno) +
                                  ": " + e.what());
    }
  }
  return base;
}

ExperimentSpec load_config(const std::string& path, ExperimentSpec base) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open config file '" + path + "'");
  }
  return parse_config_text(in, path, std::move(base));
}

std::vector<std::string> emit_outputs(const std::vector<ResultRow>& rows,
                                      const ExperimentSpec& spec_in) {
  if (rows.empty()) {
    throw std::invalid_argument("emit_outputs: no rows");
  }
  ExperimentSpec spec = spec_in;
  spec.resolve();
  namespace fs = std::filesystem;
  fs::create_directories(spec.out_dir);
  const std::string raw_path = spec.out_dir + "/results.csv";
  const std::string summary_path = spec.out_dir + "/summary.csv";
  const std::string manifest_path = spec.out_dir + "/manifest.txt";

  {
    std::ofstream os(raw_path);
    if (!os) throw std::runtime_error("cannot write " + raw_path);
    os << kRawHeader << "\n";
    char buf[256];
    for (const ResultRow& r : rows) {
      std::snprintf(buf, sizeof(buf), "%d,%s,%d,%d,%d,%d,%llu,%.17g,%.3f,%ld,%d\n",
                    r.trial, to_string(r.algorithm).c_str(), r.N, r.U, r.K,
                    r.M, static_cast<unsigned long long>(r.seed),
                    r.min_sinr_db, r.runtime_ms, r.inner_iterations,
                    r.converged_to_vertices ? 1 : 0);
      os << buf;
    }
  }

  {
    std::ofstream os(summary_path);
    if (!os) throw std::runtime_error("cannot write " + summary_path);
    os << kSummaryHeader << "\n";
    // Distinct sweep points in row order (rows are point-major), and
    // algorithms in canonical name order.
    std::vector<std::array<int, 3>> points;
    for (const ResultRow& r : rows) {
      std::array<int, 3> p{r.N, r.U, r.K};
      if (points.empty() || points.back() != p) points.push_back(p);
    }
    std::vector<Algorithm> algs;
    for (const ResultRow& r : rows) {
      if (std::find(algs.begin(), algs.end(), r.algorithm) == algs.end()) {
        algs.push_back(r.algorithm);
      }
    }
    std::sort(algs.begin(), algs.end(), [](Algorithm a, Algorithm b) {
      return to_string(a) < to_string(b);
    });
    char buf[256];
    for (const auto& p : points) {
      for (Algorithm alg : algs) {
        Real mean = 0.0, mean_rt = 0.0;
        long count = 0;
        int m = 0;
        for (const ResultRow& r : rows) {
          if (r.N == p[0] && r.U == p[1] && r.K == p[2] &&
              r.algorithm == alg) {
            mean += r.min_sinr_db;
            mean_rt += r.runtime_ms;
            m = r.M;
            ++count;
          }
        }
        if (count == 0) continue;
        mean /= count;
        mean_rt /= count;
        Real var = 0.0;
        for (const ResultRow& r : rows) {
          if (r.N == p[0] && r.U == p[1] && r.K == p[2] &&
              r.algorithm == alg) {
            var += (r.min_sinr_db - mean) * (r.min_sinr_db - mean);
          }
        }
        Real stddev = count > 1 ? std::sqrt(var / (count - 1)) : 0.0;
        std::snprintf(buf, sizeof(buf),
                      "%s,%d,%d,%d,%d,%ld,%.17g,%.17g,%.3f\n",
                      to_string(alg).c_str(), p[0], p[1], p[2], m, count,
                      mean, stddev, mean_rt);
        os << buf;
      }
    }
  }

  {
    std::ofstream os(manifest_path);
    if (!os) throw std::runtime_error("cannot write " + manifest_path);
    write_manifest(os, spec);
  }
  return {raw_path, summary_path, manifest_path};
}

}  // namespace hullbeam::experiment
