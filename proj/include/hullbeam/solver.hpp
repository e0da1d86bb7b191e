#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "hullbeam/channel.hpp"
#include "hullbeam/common.hpp"
#include "hullbeam/geometry.hpp"
#include "hullbeam/precoder.hpp"
#include "hullbeam/rng.hpp"
#include "hullbeam/sinr.hpp"

namespace hullbeam::solver {

enum class LambdaCapMode { None, EquivalenceThreshold };
enum class InitMode { Ones, Random };

struct SolverConfig {
  int T1 = 10;    // outer iterations (precoder alternation)
  int T2 = 1000;  // inner iterations per outer round

  Real lambda_init = 1e-4;
  Real lambda_growth = 10.0;
  int lambda_period = 100;  // inner iterations between growths
  LambdaCapMode lambda_cap = LambdaCapMode::None;

  Real alpha0 = 0.01;  // y stepsize
  Real beta0 = 0.01;   // x stepsize
  Real stepsize_decay = 0.997;

  bool final_round = true;
  bool reset_stepsizes_each_outer = true;

  void validate() const;
};

/// Per-iteration log: inner records carry the state after each inner update
/// together with the lambda/stepsizes used by that update; outer records the
/// min-SINR right after each precoder update.
struct SolveTrace {
  struct InnerRecord {
    Real min_sinr_db;
    Real g;
    Real lambda;
    Real alpha;
    Real beta;
  };
  std::vector<InnerRecord> inner;
  std::vector<Real> outer_min_sinr_db;
  std::vector<double> outer_wall_ms;

  /// Columns: iteration,min_sinr_db,lambda,alpha,beta.
  void write_csv(std::ostream& os) const;
};

struct TrialResult {
  RVec per_user_sinr;  // linear scale
  Real min_sinr = 0.0;
  long iterations = 0;
  double wall_ms = 0.0;
  CVec x;
  CMat W;
  bool converged_to_vertices = false;
  bool degraded_precoder = false;
  bool shared_w = false;

  Real min_sinr_db() const { return linear_to_db(min_sinr); }
  RVec per_user_sinr_db() const;
};

/// Penalty at inner iteration j (1-based):
///   lambda_init * growth^floor(j / period),
/// optionally capped at the equivalence threshold.
Real lambda_schedule(long j, const SolverConfig& cfg,
                     const sinr::LipschitzBounds* bounds = nullptr);

/// Ascent directions are rescaled to unit sup-norm before stepping. Channel
/// powers (hence raw gradient magnitudes) span many orders of magnitude
/// across scenarios while the feasible sets have unit scale, so the fixed
/// stepsize schedule is only meaningful on normalized directions: the
/// stepsize then reads as the fraction of the feasible set traversed per
/// iteration. Shared by the proximal solver and the gradient baselines so
/// that the penalty ablation stays exact.
RVec normalized_sup(const RVec& v);
void normalize_ascent_direction(CVec& g);  // sup over entries 1..N

struct InnerResult {
  sinr::PhaseVector x;
  geometry::SimplexPoint y;
};

/// One homotopy pass of the projection/proximal gradient descent-ascent:
/// per iteration the simplex variable takes a projected descent step on
/// g(x, y), then every coordinate of x takes the proximal ascent step inside
/// the hull (x[0] stays pinned). The coordinate prox sweep is the hot loop
/// and runs in parallel; coordinates are independent so the result is
/// bit-identical at any thread count. Throws std::invalid_argument on an
/// infeasible starting point.
InnerResult inner_apgda(const sinr::CouplingMatrices& C,
                        const sinr::PhaseVector& x0,
                        const geometry::SimplexPoint& y0,
                        const SolverConfig& cfg, int K,
                        SolveTrace* trace = nullptr);

/// Full alternation: T1 rounds of (max-min precoder update, coupling
/// rebuild, lambda/stepsize reset, inner homotopy). The reported SINRs are
/// always evaluated at the final configuration actually returned: the
/// alphabet-rounded point when final_round is set.
TrialResult solve(const channel::ChannelSet& channels,
                  const channel::ScenarioConfig& scenario,
                  const SolverConfig& cfg, Real P, const RVec& sigma2, int K,
                  InitMode init = InitMode::Ones, Rng* init_rng = nullptr,
                  SolveTrace* trace = nullptr);

/// Uniform draw from the hull (used by InitMode::Random and the tests).
Complex random_hull_point(const geometry::HullPolygon& polygon, Rng& rng);

}  // namespace hullbeam::solver
