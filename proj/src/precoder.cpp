#include "hullbeam/precoder.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace hullbeam::precoder {

std::vector<CVec> effective_channels(const sinr::PhaseVector& x,
                                     const std::vector<CMat>& phis) {
  std::vector<CVec> h;
  h.reserve(phis.size());
  for (const CMat& phi : phis) {
    if (phi.rows() != x.size()) {
      throw std::invalid_argument("effective_channels: dimension mismatch");
    }
    h.push_back(phi.adjoint() * x);
  }
  return h;
}

std::vector<CVec> effective_channels(const sinr::PhaseVector& x,
                                     const channel::ChannelSet& channels) {
  return effective_channels(x, sinr::build_all_phis(channels));
}

RVec downlink_sinrs(const std::vector<CVec>& h, const CMat& W,
                    const RVec& sigma2) {
  const int U = static_cast<int>(h.size());
  RVec s(U);
  for (int u = 0; u < U; ++u) {
    Real sig = 0.0, intf = sigma2[u];
    for (int up = 0; up < U; ++up) {
      Real p = std::norm(h[u].dot(W.col(up)));
      if (up == u) {
        sig = p;
      } else {
        intf += p;
      }
    }
    s[u] = sig / intf;
  }
  return s;
}

namespace {

// Rotate each column so its first non-negligible entry is real-positive;
// SINRs are phase-invariant, serialized output becomes reproducible.
void normalize_column_phases(CMat& W) {
  for (Eigen::Index c = 0; c < W.cols(); ++c) {
    Real colnorm = W.col(c).norm();
    for (Eigen::Index r = 0; r < W.rows(); ++r) {
      Complex w = W(r, c);
      if (std::abs(w) > 1e-12 * colnorm) {
        W.col(c) *= std::conj(w) / std::abs(w);
        break;
      }
    }
  }
}

CMat stack_channels(const std::vector<CVec>& h) {
  const int U = static_cast<int>(h.size());
  CMat H(h[0].size(), U);
  for (int u = 0; u < U; ++u) H.col(u) = h[u];
  return H;
}

}  // namespace

Precoder update_w_maxmin(const std::vector<CVec>& h, Real P,
                         const RVec& sigma2) {
  const int U = static_cast<int>(h.size());
  if (U == 0 || !(P > 0.0)) {
    throw std::invalid_argument("update_w_maxmin: need users and P > 0");
  }
  const int M = static_cast<int>(h[0].size());
  if (sigma2.size() != U) {
    throw std::invalid_argument("update_w_maxmin: sigma2 size mismatch");
  }
  if (U > M) {
    std::fprintf(stderr,
                 "hullbeam: warning: update_w_maxmin with U=%d > M=%d\n", U,
                 M);
  }

  // Noise-normalized channels: the dual uplink then has identity noise.
  CMat Ht(M, U);
  for (int u = 0; u < U; ++u) Ht.col(u) = h[u] / std::sqrt(sigma2[u]);

  RVec q = RVec::Constant(U, P / U);
  RVec S(U), X(U);
  CMat V(M, U);
  bool converged = false;
  constexpr Real kTiny = 1e-300;
  for (int iter = 0; iter < 500; ++iter) {
    CMat A = CMat::Identity(M, M);
    for (int u = 0; u < U; ++u) {
      A.noalias() += q[u] * (Ht.col(u) * Ht.col(u).adjoint());
    }
    V = A.llt().solve(Ht);
    for (int u = 0; u < U; ++u) {
      Real Y = Ht.col(u).dot(V.col(u)).real();
      X[u] = Y / std::max(1.0 - q[u] * Y, kTiny);
      S[u] = q[u] * X[u];
    }
    Real spread =
        (S.maxCoeff() - S.minCoeff()) / std::max(S.minCoeff(), kTiny);
    if (spread < 1e-6) {
      converged = true;
      break;
    }
    RVec qn = X.cwiseMax(kTiny).cwiseInverse();
    q = qn * (P / qn.sum());
  }

  // Downlink recovery: uplink MMSE directions, powers from the balancing
  // linear system at the achieved level.
  Real gamma = S.minCoeff();
  CMat dirs(M, U);
  for (int u = 0; u < U; ++u) dirs.col(u) = V.col(u).normalized();

  RMat G(U, U);
  for (int u = 0; u < U; ++u) {
    for (int up = 0; up < U; ++up) {
      G(u, up) = std::norm(h[u].dot(dirs.col(up)));
    }
  }
  RMat B(U, U);
  for (int u = 0; u < U; ++u) {
    for (int up = 0; up < U; ++up) {
      B(u, up) = (u == up) ? G(u, u) / gamma : -G(u, up);
    }
  }
  RVec p = B.fullPivLu().solve(sigma2);
  if (!(p.minCoeff() > 0.0) || !p.allFinite()) {
    p = RVec::Constant(U, P / U);  // defensible only in degenerate geometry
    converged = false;
  }

  Precoder out;
  out.P = P;
  out.W.resize(M, U);
  for (int u = 0; u < U; ++u) out.W.col(u) = std::sqrt(p[u]) * dirs.col(u);
  out.W *= std::sqrt(P / out.W.squaredNorm());
  normalize_column_phases(out.W);
  out.degraded_accuracy = !converged;
  return out;
}

Precoder update_w_fallback(const std::vector<CVec>& h, Real P,
                           const RVec& sigma2, FallbackMode mode) {
  const int U = static_cast<int>(h.size());
  if (U == 0 || !(P > 0.0)) {
    throw std::invalid_argument("update_w_fallback: need users and P > 0");
  }
  (void)sigma2;
  const int M = static_cast<int>(h[0].size());
  Precoder out;
  out.P = P;
  const Real col_power = std::sqrt(P / U);

  if (mode == FallbackMode::Zf && U <= M) {
    CMat H = stack_channels(h);
    CMat gram = H.adjoint() * H;
    Eigen::FullPivLU<CMat> lu(gram);
    if (lu.isInvertible()) {
      CMat W0 = H * lu.inverse();
      out.W.resize(M, U);
      for (int u = 0; u < U; ++u) {
        out.W.col(u) = col_power * W0.col(u).normalized();
      }
      normalize_column_phases(out.W);
      return out;
    }
  }
  if (mode == FallbackMode::Zf) out.zf_fell_back = true;

  out.W.resize(M, U);
  for (int u = 0; u < U; ++u) {
    out.W.col(u) = col_power * h[u].normalized();
  }
  normalize_column_phases(out.W);
  return out;
}

}  // namespace hullbeam::precoder
