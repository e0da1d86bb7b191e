#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hullbeam/baselines.hpp"
#include "hullbeam/channel.hpp"
#include "hullbeam/common.hpp"
#include "hullbeam/solver.hpp"

namespace hullbeam::experiment {

inline constexpr const char* kArtifactVersion = "hullbeam 0.1.0";

enum class Algorithm { ChrApgda, Gda, Riemannian, RandomSearch, Exhaustive };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

struct ExperimentSpec {
  channel::ScenarioConfig scenario;  // N/U replaced per sweep point
  solver::SolverConfig solver;
  baselines::BaselineConfig baseline;

  std::vector<int> sweep_n{32, 64, 128};
  std::vector<int> sweep_u{2, 4, 6};
  std::vector<int> sweep_k{2, 4};
  int trials = 20;
  std::vector<Algorithm> algorithms{Algorithm::ChrApgda, Algorithm::Gda,
                                    Algorithm::Riemannian};

  Real power_dbm = 30.0;
  Real noise_dbm = -90.0;
  std::uint64_t master_seed = 1;
  std::string out_dir = "results";
  solver::InitMode init = solver::InitMode::Ones;

  // Converted exactly once, at resolve(); all downstream math is linear.
  Real power_watt = 0.0;
  Real noise_watt = 0.0;

  /// Fills the derived fields (linear powers, baseline iteration counts
  /// inherited from the solver when left at 0) and validates.
  void resolve();
  void validate() const;  // throws naming the offending field path
};

ExperimentSpec desk_preset();
ExperimentSpec paper_preset();
ExperimentSpec preset_by_name(const std::string& name);

struct ResultRow {
  int trial = 0;
  Algorithm algorithm = Algorithm::ChrApgda;
  int N = 0, U = 0, K = 0, M = 0;
  std::uint64_t seed = 0;
  Real min_sinr_db = 0.0;
  RVec per_user_sinr_db;
  double runtime_ms = 0.0;
  long inner_iterations = 0;
  bool converged_to_vertices = false;
};

/// Runs every (sweep point, trial, algorithm) combination. All algorithms at
/// one (point, trial) share the trial seed and the drawn ChannelSet (paired
/// design). Trials execute in parallel; rows come back in canonical order
/// (sweep point, trial, algorithm) regardless of scheduling, and the content
/// is deterministic for a fixed spec.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

/// Writes results.csv (fixed header), summary.csv (per-point mean/std), and
/// manifest.txt (the fully resolved spec; re-loadable as a config file).
/// Returns the paths written.
std::vector<std::string> emit_outputs(const std::vector<ResultRow>& rows,
                                      const ExperimentSpec& spec);

inline constexpr const char* kRawHeader =
    "trial,algorithm,N,U,K,M,seed,min_sinr_db,runtime_ms,inner_iterations,"
    "converged_to_vertices";
inline constexpr const char* kSummaryHeader =
    "algorithm,N,U,K,M,trials,mean_min_sinr_db,std_min_sinr_db,"
    "mean_runtime_ms";

/// Flat key=value config format ('#' comments). Unknown keys are errors
/// except the informational manifest.* namespace, so a manifest reloads as a
/// config. Parsing starts from `base` and overrides the touched fields.
ExperimentSpec parse_config_text(std::istream& in, const std::string& source,
                                 ExperimentSpec base);
ExperimentSpec load_config(const std::string& path, ExperimentSpec base);
void write_manifest(std::ostream& os, const ExperimentSpec& spec);

}  // namespace hullbeam::experiment
