// Test-only oracles, independent of the implementation paths they check:
// bisection-based simplex projection, dense grid search for the coordinate
// prox, bisection + feasibility for the max-min precoder, and helpers for
// random instances.

#pragma once

#include <cstdint>
#include <vector>

#include "hullbeam/channel.hpp"
#include "hullbeam/common.hpp"
#include "hullbeam/geometry.hpp"
#include "hullbeam/rng.hpp"
#include "hullbeam/sinr.hpp"

namespace hullbeam::testing {

/// Simplex projection via bisection on the water level tau such that
/// sum max(v - tau, 0) = 1. Independent of the sort-and-threshold path.
RVec simplex_bisection_oracle(const RVec& v);

/// Minimum of phi(x) = |x-c|^2/(2 beta) - lambda |x| over a dense sampling
/// of the polygon: a box grid filtered to the polygon plus fine boundary
/// sampling. Upper-bounds the true minimum from above.
Real prox_grid_min(Complex c, Real beta, Real lambda,
                   const geometry::HullPolygon& polygon, int box_points = 1000,
                   int edge_points = 100000);

/// Balanced max-min SINR level by bisection on the target with a
/// fixed-point feasibility check of the dual uplink powers.
Real precoder_balanced_oracle(const std::vector<CVec>& h, Real P,
                              const RVec& sigma2);

/// Random rank-1 coupling set with O(1) scale entries; sigma2 uniform in
/// [0.5, 2].
sinr::CouplingMatrices random_couplings(Rng& rng, int N, int U);

/// Feasible random configuration: entries uniform over the hull, x[0] = 1.
sinr::PhaseVector random_feasible_x(Rng& rng,
                                    const geometry::HullPolygon& polygon,
                                    int N);

/// Physically scaled instance: drawn channels, balanced precoder at the
/// all-ones configuration, couplings at P = 30 dBm and -90 dBm noise.
struct Instance {
  channel::ChannelSet channels;
  CMat W;
  sinr::CouplingMatrices C;
  RVec sigma2;
  Real P;
  channel::ScenarioConfig scenario;
};

Instance make_instance(std::uint64_t seed, int N, int U, int M);

}  // namespace hullbeam::testing
