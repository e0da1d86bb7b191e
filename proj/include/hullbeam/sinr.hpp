#pragma once

#include <vector>

#include "hullbeam/channel.hpp"
#include "hullbeam/common.hpp"
#include "hullbeam/geometry.hpp"

namespace hullbeam::sinr {

/// Length-(N+1) configuration vector with x[0] pinned to 1 and every other
/// entry inside the hull polygon. Stored exactly as it multiplies in the
/// quadratic forms x^H C x; the physical phase of element n is
/// -arg(x[n]) (the hull is closed under conjugation, so geometry is
/// unaffected).
using PhaseVector = CVec;

bool is_feasible_phase_vector(const PhaseVector& x,
                              const geometry::HullPolygon& polygon,
                              Real tol = 1e-9);

/// The (N+1) x M map from transmit vector to the scalar seen by user u:
/// first row d_u^T, remaining rows diag(g_u) F.
CMat build_phi(const channel::ChannelSet& channels, int u);

std::vector<CMat> build_all_phis(const channel::ChannelSet& channels);

/// Coupling matrices C[u][u'] = (Phi_u w_u')(Phi_u w_u')^H together with the
/// per-user noise powers. Each matrix is rank one; only the factor streams
/// Phi_u w_u' are stored and dense matrices are materialized on demand.
class CouplingMatrices {
 public:
  CouplingMatrices() = default;
  CouplingMatrices(std::vector<CVec> streams, RVec sigma2);

  int users() const { return static_cast<int>(sigma2_.size()); }
  Eigen::Index dim() const { return streams_.empty() ? 0 : streams_[0].size(); }

  /// The rank-1 factor Phi_u w_up.
  const CVec& stream(int u, int up) const {
    return streams_[static_cast<size_t>(u) * users() + up];
  }
  CMat dense(int u, int up) const {
    return stream(u, up) * stream(u, up).adjoint();
  }
  const RVec& sigma2() const { return sigma2_; }

 private:
  std::vector<CVec> streams_;  // row-major U x U
  RVec sigma2_;
};

/// Assembles the couplings for precoder W (columns w_u). Warns on stderr if
/// ||W||_F^2 exceeds the power budget by more than 1e-6 relative; pass an
/// infinite budget to skip the check.
CouplingMatrices build_couplings(const channel::ChannelSet& channels,
                                 const CMat& W, const RVec& sigma2,
                                 Real power_budget =
                                     std::numeric_limits<Real>::infinity());
CouplingMatrices build_couplings(const std::vector<CMat>& phis, const CMat& W,
                                 const RVec& sigma2,
                                 Real power_budget =
                                     std::numeric_limits<Real>::infinity());

/// SINR of user u, also the ratio f_u entering the minimax objective:
///   f_u(x) = x^H C_uu x / (sum_{u' != u} x^H C_uu' x + sigma_u^2).
/// Evaluated through the rank-1 inner products (O(NU) per user).
Real sinr_u(const PhaseVector& x, const CouplingMatrices& C, int u);

/// All f_u at once; the per-user evaluations are independent and run in
/// parallel.
RVec all_sinrs(const PhaseVector& x, const CouplingMatrices& C);

Real min_sinr(const PhaseVector& x, const CouplingMatrices& C);

/// g(x, y) = sum_u y_u f_u(x).
Real g_value(const PhaseVector& x, const geometry::SimplexPoint& y,
             const CouplingMatrices& C);

/// Gradient of g with respect to y: just the vector (f_1, ..., f_U).
RVec grad_y_g(const PhaseVector& x, const CouplingMatrices& C);

/// Wirtinger ascent direction 2 dg/d(conj x). Entry 0 is reported but the
/// solvers never move x[0]. Per-user contributions are computed in parallel
/// and combined in fixed order, so the result is independent of the thread
/// count.
CVec grad_x_g(const PhaseVector& x, const geometry::SimplexPoint& y,
              const CouplingMatrices& C);

/// Serial reference path operating on the dense matrices; used by the tests
/// and the benchmark to validate the rank-1 fast path (agreement within
/// 1e-10 relative).
Real sinr_u_quadratic(const PhaseVector& x, const CouplingMatrices& C, int u);
CVec grad_x_g_quadratic(const PhaseVector& x, const geometry::SimplexPoint& y,
                        const CouplingMatrices& C);

/// Per-user Lipschitz constants of f_u over the hull,
///   L_u = (2 sqrt(N+1) ||C_uu||_F / sigma_u^2)
///         (1 + (N+1) ||sum_{u' != u} C_uu'||_F / sigma_u^2),
/// and the two penalty thresholds derived from them: lambda_boundary pushes
/// every optimum to the hull boundary, lambda_equiv = sin(pi/K)/(1-cos(pi/K))
/// max_u L_u makes the relaxation exact.
struct LipschitzBounds {
  RVec L;
  Real lambda_boundary = 0.0;
  Real lambda_equiv = 0.0;
};

LipschitzBounds lipschitz_bounds(const CouplingMatrices& C, int K);

}  // namespace hullbeam::sinr
