#pragma once

#include <vector>

#include "hullbeam/channel.hpp"
#include "hullbeam/common.hpp"
#include "hullbeam/sinr.hpp"

namespace hullbeam::precoder {

struct Precoder {
  CMat W;       // M x U, columns are per-user beams
  Real P = 0;   // total power budget, ||W||_F^2 <= P (tight on success)
  bool degraded_accuracy = false;  // balancing did not reach tolerance
  bool zf_fell_back = false;       // rank-deficient ZF replaced by MRT
};

/// Effective downlink channel of each user for the current configuration,
/// h_u = (x^H Phi_u)^H, so that x^H Phi_u w = h_u^H w.
std::vector<CVec> effective_channels(const sinr::PhaseVector& x,
                                     const channel::ChannelSet& channels);
std::vector<CVec> effective_channels(const sinr::PhaseVector& x,
                                     const std::vector<CMat>& phis);

/// Downlink SINRs of precoder W on channels h with noise powers sigma2.
RVec downlink_sinrs(const std::vector<CVec>& h, const CMat& W,
                    const RVec& sigma2);

/// Max-min SINR beamforming under the total power constraint, solved by the
/// uplink-downlink duality fixed point: iterate uplink powers against the
/// MMSE-filter interference levels until the uplink SINRs balance (relative
/// spread < 1e-6, at most 500 iterations), then recover the downlink powers
/// from the U x U system that equalizes all SINRs at the balanced level.
/// On success all per-user SINRs agree within 1e-4 relative and
/// ||W||_F^2 = P within 1e-8 relative.
Precoder update_w_maxmin(const std::vector<CVec>& h, Real P,
                         const RVec& sigma2);

enum class FallbackMode { Mrt, Zf };

/// Matched filtering or zero forcing with equal per-user power, scaled to
/// ||W||_F^2 = P. Rank-deficient ZF falls back to MRT and flags it.
Precoder update_w_fallback(const std::vector<CVec>& h, Real P,
                           const RVec& sigma2, FallbackMode mode);

}  // namespace hullbeam::precoder
