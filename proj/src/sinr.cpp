#include "hullbeam/sinr.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace hullbeam::sinr {

namespace {
constexpr Real kPi = 3.141592653589793238462643383279502884;
}

bool is_feasible_phase_vector(const PhaseVector& x,
                              const geometry::HullPolygon& polygon,
                              Real tol) {
  if (x.size() < 1 || x[0] != Complex(1.0, 0.0)) return false;
  for (Eigen::Index n = 1; n < x.size(); ++n) {
    if (!polygon.contains(x[n], tol)) return false;
  }
  return true;
}

CMat build_phi(const channel::ChannelSet& channels, int u) {
  if (u < 0 || u >= channels.users()) {
    throw std::out_of_range("build_phi: user index out of range");
  }
  const int N = channels.irs_elements();
  const int M = channels.bs_antennas();
  CMat phi(N + 1, M);
  phi.row(0) = channels.d[u].transpose();
  for (int n = 0; n < N; ++n) {
    phi.row(n + 1) = channels.g[u][n] * channels.F.row(n);
  }
  return phi;
}

std::vector<CMat> build_all_phis(const channel::ChannelSet& channels) {
  std::vector<CMat> phis;
  phis.reserve(channels.users());
  for (int u = 0; u < channels.users(); ++u) {
    phis.push_back(build_phi(channels, u));
  }
  return phis;
}

CouplingMatrices::CouplingMatrices(std::vector<CVec> streams, RVec sigma2)
    : streams_(std::move(streams)), sigma2_(std::move(sigma2)) {
  const size_t U = static_cast<size_t>(sigma2_.size());
  if (streams_.size() != U * U) {
    throw std::invalid_argument("CouplingMatrices: need U*U streams");
  }
  if (U > 0 && sigma2_.minCoeff() <= 0.0) {
    throw std::invalid_argument("CouplingMatrices: sigma2 must be positive");
  }
}

CouplingMatrices build_couplings(const std::vector<CMat>& phis, const CMat& W,
                                 const RVec& sigma2, Real power_budget) {
  const int U = static_cast<int>(phis.size());
  if (W.cols() != U || sigma2.size() != U) {
    throw std::invalid_argument("build_couplings: dimension mismatch");
  }
  if (std::isfinite(power_budget)) {
    Real used = W.squaredNorm();
    if (used > power_budget * (1.0 + 1e-6)) {
      std::fprintf(stderr,
                   "hullbeam: warning: precoder power %.6g exceeds budget "
                   "%.6g\n",
                   used, power_budget);
    }
  }
  std::vector<CVec> streams(static_cast<size_t>(U) * U);
  for (int u = 0; u < U; ++u) {
    if (phis[u].cols() != W.rows()) {
      throw std::invalid_argument("build_couplings: Phi/W dimension mismatch");
    }
    for (int up = 0; up < U; ++up) {
      streams[static_cast<size_t>(u) * U + up].noalias() =
          phis[u] * W.col(up);
    }
  }
  return CouplingMatrices(std::move(streams), sigma2);
}

CouplingMatrices build_couplings(const channel::ChannelSet& channels,
                                 const CMat& W, const RVec& sigma2,
                                 Real power_budget) {
  return build_couplings(build_all_phis(channels), W, sigma2, power_budget);
}

namespace {

// Signal power q_u = |s_uu|^2 and interference-plus-noise D_u for one user.
struct Ratio {
  Real q;
  Real D;
};

Ratio user_ratio(const PhaseVector& x, const CouplingMatrices& C, int u) {
  const int U = C.users();
  Ratio r{0.0, C.sigma2()[u]};
  for (int up = 0; up < U; ++up) {
    Real p = std::norm(C.stream(u, up).dot(x));
    if (up == u) {
      r.q = p;
    } else {
      r.D += p;
    }
  }
  return r;
}

}  // namespace

Real sinr_u(const PhaseVector& x, const CouplingMatrices& C, int u) {
  Ratio r = user_ratio(x, C, u);
  return r.q / r.D;
}

RVec all_sinrs(const PhaseVector& x, const CouplingMatrices& C) {
  const int U = C.users();
  RVec f(U);
#pragma omp parallel for schedule(static) if (U >= 8)
  for (int u = 0; u < U; ++u) {
    f[u] = sinr_u(x, C, u);
  }
  return f;
}

Real min_sinr(const PhaseVector& x, const CouplingMatrices& C) {
  return all_sinrs(x, C).minCoeff();
}

Real g_value(const PhaseVector& x, const geometry::SimplexPoint& y,
             const CouplingMatrices& C) {
  return y.dot(all_sinrs(x, C));
}

RVec grad_y_g(const PhaseVector& x, const CouplingMatrices& C) {
  return all_sinrs(x, C);
}

CVec grad_x_g(const PhaseVector& x, const geometry::SimplexPoint& y,
              const CouplingMatrices& C) {
  const int U = C.users();
  const Eigen::Index dim = C.dim();
  // Each active user's contribution is formed independently; the final sum
  // runs in fixed user order so results do not depend on the thread count.
  std::vector<CVec> parts(U);
#pragma omp parallel for schedule(static) if (U >= 4 && dim >= 128)
  for (int u = 0; u < U; ++u) {
    if (y[u] == 0.0) continue;
    CVec part = CVec::Zero(dim);
    Real q = 0.0;
    Real D = C.sigma2()[u];
    std::vector<Complex> s(U);
    for (int up = 0; up < U; ++up) {
      s[up] = C.stream(u, up).dot(x);  // a^H x
      if (up == u) {
        q = std::norm(s[up]);
      } else {
        D += std::norm(s[up]);
      }
    }
    part.noalias() = (2.0 * y[u] / D * s[u]) * C.stream(u, u);
    const Real interference_coef = -2.0 * y[u] * q / (D * D);
    for (int up = 0; up < U; ++up) {
      if (up == u) continue;
      part.noalias() += (interference_coef * s[up]) * C.stream(u, up);
    }
    parts[u] = std::move(part);
  }
  CVec grad = CVec::Zero(dim);
  for (int u = 0; u < U; ++u) {
    if (parts[u].size() > 0) grad += parts[u];
  }
  return grad;
}

Real sinr_u_quadratic(const PhaseVector& x, const CouplingMatrices& C, int u) {
  const int U = C.users();
  Real num = (x.adjoint() * C.dense(u, u) * x)(0, 0).real();
  Real den = C.sigma2()[u];
  for (int up = 0; up < U; ++up) {
    if (up == u) continue;
    den += (x.adjoint() * C.dense(u, up) * x)(0, 0).real();
  }
  return num / den;
}

CVec grad_x_g_quadratic(const PhaseVector& x, const geometry::SimplexPoint& y,
                        const CouplingMatrices& C) {
  const int U = C.users();
  CVec grad = CVec::Zero(C.dim());
  for (int u = 0; u < U; ++u) {
    if (y[u] == 0.0) continue;
    CVec num_grad = 2.0 * (C.dense(u, u) * x);
    Real q = (x.adjoint() * C.dense(u, u) * x)(0, 0).real();
    Real D = C.sigma2()[u];
    CVec den_grad = CVec::Zero(C.dim());
    for (int up = 0; up < U; ++up) {
      if (up == u) continue;
      D += (x.adjoint() * C.dense(u, up) * x)(0, 0).real();
      den_grad += 2.0 * (C.dense(u, up) * x);
    }
    grad += y[u] * (num_grad / D - (q / (D * D)) * den_grad);
  }
  return grad;
}

LipschitzBounds lipschitz_bounds(const CouplingMatrices& C, int K) {
  if (K < 2) {
    throw std::invalid_argument("lipschitz_bounds: K must be >= 2");
  }
  const int U = C.users();
  const Real dim = static_cast<Real>(C.dim());
  LipschitzBounds b;
  b.L.resize(U);
  for (int u = 0; u < U; ++u) {
    const Real sig2 = C.sigma2()[u];
    // ||a a^H||_F = ||a||^2, and for the interference sum the Gram identity
    // ||sum_i a_i a_i^H||_F^2 = sum_ij |a_i^H a_j|^2 avoids materializing it.
    Real self_f = C.stream(u, u).squaredNorm();
    Real cross_f2 = 0.0;
    for (int u1 = 0; u1 < U; ++u1) {
      if (u1 == u) continue;
      for (int u2 = 0; u2 < U; ++u2) {
        if (u2 == u) continue;
        cross_f2 += std::norm(C.stream(u, u1).dot(C.stream(u, u2)));
      }
    }
    Real cross_f = std::sqrt(cross_f2);
    b.L[u] = 2.0 * std::sqrt(dim) * self_f / sig2 *
             (1.0 + dim * cross_f / sig2);
  }
  b.lambda_boundary = U > 0 ? b.L.maxCoeff() : 0.0;
  b.lambda_equiv =
      std::sin(kPi / K) / (1.0 - std::cos(kPi / K)) * b.lambda_boundary;
  return b;
}

}  // namespace hullbeam::sinr
