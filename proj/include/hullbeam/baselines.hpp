#pragma once

#include "hullbeam/channel.hpp"
#include "hullbeam/common.hpp"
#include "hullbeam/rng.hpp"
#include "hullbeam/sinr.hpp"
#include "hullbeam/solver.hpp"

namespace hullbeam::baselines {

struct BaselineConfig {
  int iterations = 1000;   // inner iterations per round
  int outer_rounds = 10;   // precoder alternation rounds (full variants)
  Real step0 = 0.01;       // x stepsize
  Real step_decay = 0.997;
  Real alpha0 = 0.01;      // y stepsize (GDA)

  // Soft-min smoothing for the unit-circle method: the temperature starts at
  // temperature_scale times the initial min f_u and halves every
  // temperature_halve_period iterations.
  Real temperature_scale = 0.01;
  int temperature_halve_period = 200;

  int random_draws = 100;

  void validate() const;
};

/// Smoothed minimum -tau log sum_u exp(-f_u / tau) and its softmax weights;
/// |soft_min - min| <= tau log U.
Real soft_min(const RVec& f, Real tau);
RVec soft_min_weights(const RVec& f, Real tau);

/// Unit-circle relaxation: Riemannian gradient ascent on the product of
/// circles (tangent projection + normalization retraction) maximizing the
/// soft-min of the SINRs, then rounding to the alphabet. Reported SINRs are
/// at the rounded point.
solver::TrialResult solve_unit_circle(const sinr::CouplingMatrices& C,
                                      const BaselineConfig& cfg, int K,
                                      solver::SolveTrace* trace = nullptr);

/// Plain projected gradient descent-ascent on the minimax problem: the same
/// y step as the proximal solver but a bare hull projection for x and no
/// vertex-promoting penalty. This is the ablation isolating the penalty.
solver::TrialResult solve_gda(const sinr::CouplingMatrices& C,
                              const BaselineConfig& cfg, int K,
                              solver::SolveTrace* trace = nullptr);

/// Best of `draws` uniform alphabet configurations, each scored with its own
/// max-min precoder.
solver::TrialResult solve_random(const channel::ChannelSet& channels, Real P,
                                 const RVec& sigma2, int K, int draws,
                                 Rng& rng);

struct ExhaustiveOptions {
  bool use_shared_w = false;  // score all configurations under one W
  CMat shared_w;
};

/// Global optimum over all K^N configurations (guarded at 2^20), each scored
/// with its max-min precoder unless a shared W is configured. The search
/// space is partitioned across threads; ties go to the lexicographically
/// smallest configuration index, so the result is independent of the
/// partitioning.
solver::TrialResult solve_exhaustive(const channel::ChannelSet& channels,
                                     Real P, const RVec& sigma2, int K, int N,
                                     int U,
                                     const ExhaustiveOptions& opts = {});

/// Single-threaded reference sweep used to validate the parallel search.
solver::TrialResult solve_exhaustive_serial(
    const channel::ChannelSet& channels, Real P, const RVec& sigma2, int K,
    int N, int U, const ExhaustiveOptions& opts = {});

/// Full alternation wrappers mirroring the proximal solver's outer loop
/// (max-min precoder update between rounds), so every algorithm in a paired
/// experiment shares the same precoder machinery.
solver::TrialResult solve_gda_full(const channel::ChannelSet& channels,
                                   Real P, const RVec& sigma2, int K,
                                   const BaselineConfig& cfg);
solver::TrialResult solve_unit_circle_full(const channel::ChannelSet& channels,
                                           Real P, const RVec& sigma2, int K,
                                           const BaselineConfig& cfg);

}  // namespace hullbeam::baselines
