#include "hullbeam/baselines.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "hullbeam/precoder.hpp"

namespace hullbeam::baselines {

void BaselineConfig::validate() const {
  if (iterations < 1 || outer_rounds < 1 || random_draws < 1) {
    throw std::invalid_argument("BaselineConfig: counts must be >= 1");
  }
  if (!(step0 > 0.0) || !(alpha0 > 0.0) || !(step_decay > 0.0) ||
      step_decay > 1.0) {
    throw std::invalid_argument("BaselineConfig: bad stepsizes");
  }
  if (!(temperature_scale > 0.0) || temperature_halve_period < 1) {
    throw std::invalid_argument("BaselineConfig: bad temperature schedule");
  }
}

Real soft_min(const RVec& f, Real tau) {
  Real fmin = f.minCoeff();
  Real acc = 0.0;
  for (Eigen::Index u = 0; u < f.size(); ++u) {
    acc += std::exp(-(f[u] - fmin) / tau);
  }
  return fmin - tau * std::log(acc);
}

RVec soft_min_weights(const RVec& f, Real tau) {
  Real fmin = f.minCoeff();
  RVec w(f.size());
  for (Eigen::Index u = 0; u < f.size(); ++u) {
    w[u] = std::exp(-(f[u] - fmin) / tau);
  }
  return w / w.sum();
}

namespace {

// Riemannian ascent on the product of unit circles; returns the continuous
// (unrounded) iterate.
sinr::PhaseVector unit_circle_iterate(const sinr::CouplingMatrices& C,
                                      const BaselineConfig& cfg,
                                      sinr::PhaseVector x,
                                      solver::SolveTrace* trace) {
  const Eigen::Index dim = C.dim();
  Real eta = cfg.step0;
  RVec f0 = sinr::all_sinrs(x, C);
  Real tau0 =
      cfg.temperature_scale * (f0.minCoeff() > 0.0 ? f0.minCoeff() : 1.0);

  for (int j = 0; j < cfg.iterations; ++j) {
    Real tau = tau0 * std::pow(0.5, j / cfg.temperature_halve_period);
    RVec f = sinr::all_sinrs(x, C);
    if (trace != nullptr) {
      trace->inner.push_back(
          {linear_to_db(f.minCoeff()), soft_min(f, tau), 0.0, 0.0, eta});
    }
    RVec w = soft_min_weights(f, tau);
    CVec grad = sinr::grad_x_g(x, w, C);
    solver::normalize_ascent_direction(grad);
    for (Eigen::Index n = 1; n < dim; ++n) {
      // Tangent projection on the circle, then normalization retraction.
      Complex t = grad[n] - (grad[n].real() * x[n].real() +
                             grad[n].imag() * x[n].imag()) *
                                x[n];
      Complex moved = x[n] + eta * t;
      x[n] = moved / std::abs(moved);
    }
    eta *= cfg.step_decay;
  }
  return x;
}

// Projected gradient descent-ascent without penalty; returns the continuous
// iterate.
sinr::PhaseVector gda_iterate(const sinr::CouplingMatrices& C,
                              const BaselineConfig& cfg,
                              const geometry::HullPolygon& polygon,
                              sinr::PhaseVector x, geometry::SimplexPoint y,
                              solver::SolveTrace* trace) {
  const Eigen::Index dim = C.dim();
  Real alpha = cfg.alpha0;
  Real beta = cfg.step0;
  Real alpha_used = 0.0, beta_used = 0.0;

  for (int j = 1; j <= cfg.iterations; ++j) {
    RVec f = sinr::all_sinrs(x, C);
    if (trace != nullptr && j >= 2) {
      trace->inner.push_back(
          {linear_to_db(f.minCoeff()), y.dot(f), 0.0, alpha_used, beta_used});
    }
    y = geometry::project_simplex(y - alpha * solver::normalized_sup(f));
    CVec grad = sinr::grad_x_g(x, y, C);
    solver::normalize_ascent_direction(grad);
#pragma omp parallel for schedule(static) if (dim >= 64)
    for (Eigen::Index n = 1; n < dim; ++n) {
      x[n] = polygon.project(x[n] + beta * grad[n]);
    }
    alpha_used = alpha;
    beta_used = beta;
    alpha *= cfg.step_decay;
    beta *= cfg.step_decay;
  }
  if (trace != nullptr && cfg.iterations >= 1) {
    RVec f = sinr::all_sinrs(x, C);
    trace->inner.push_back(
        {linear_to_db(f.minCoeff()), y.dot(f), 0.0, alpha_used, beta_used});
  }
  return x;
}

// Round every configurable entry to the alphabet and report the SINRs at
// the rounded point (the same convention as the proximal solver).
solver::TrialResult finish_x_only(sinr::PhaseVector x,
                                  const sinr::CouplingMatrices& C, int K,
                                  long iterations) {
  geometry::PhaseAlphabet alphabet = geometry::PhaseAlphabet::build(K);
  solver::TrialResult out;
  out.converged_to_vertices = true;
  for (Eigen::Index n = 1; n < x.size(); ++n) {
    Complex v = geometry::round_to_alphabet(x[n], alphabet);
    if (std::abs(x[n] - v) > 1e-6) out.converged_to_vertices = false;
    x[n] = v;
  }
  out.per_user_sinr = sinr::all_sinrs(x, C);
  out.min_sinr = out.per_user_sinr.minCoeff();
  out.iterations = iterations;
  out.x = std::move(x);
  return out;
}

}  // namespace

solver::TrialResult solve_unit_circle(const sinr::CouplingMatrices& C,
                                      const BaselineConfig& cfg, int K,
                                      solver::SolveTrace* trace) {
  cfg.validate();
  sinr::PhaseVector x =
      unit_circle_iterate(C, cfg, CVec::Ones(C.dim()), trace);
  return finish_x_only(std::move(x), C, K, cfg.iterations);
}

solver::TrialResult solve_gda(const sinr::CouplingMatrices& C,
                              const BaselineConfig& cfg, int K,
                              solver::SolveTrace* trace) {
  cfg.validate();
  geometry::HullPolygon polygon(K);
  sinr::PhaseVector x =
      gda_iterate(C, cfg, polygon, CVec::Ones(C.dim()),
                  RVec::Constant(C.users(), 1.0 / C.users()), trace);
  return finish_x_only(std::move(x), C, K, cfg.iterations);
}

solver::TrialResult solve_random(const channel::ChannelSet& channels, Real P,
                                 const RVec& sigma2, int K, int draws,
                                 Rng& rng) {
  if (draws < 1) {
    throw std::invalid_argument("solve_random: draws must be >= 1");
  }
  const auto t_start = std::chrono::steady_clock::now();
  geometry::PhaseAlphabet alphabet = geometry::PhaseAlphabet::build(K);
  const int N = channels.irs_elements();
  const std::vector<CMat> phis = sinr::build_all_phis(channels);

  solver::TrialResult best;
  best.min_sinr = -1.0;
  for (int d = 0; d < draws; ++d) {
    sinr::PhaseVector x(N + 1);
    x[0] = Complex(1.0, 0.0);
    for (int n = 1; n <= N; ++n) x[n] = alphabet.points[rng.index(K)];
    std::vector<CVec> h = precoder::effective_channels(x, phis);
    precoder::Precoder pre = precoder::update_w_maxmin(h, P, sigma2);
    RVec s = precoder::downlink_sinrs(h, pre.W, sigma2);
    Real m = s.minCoeff();
    if (m > best.min_sinr) {
      best.min_sinr = m;
      best.per_user_sinr = s;
      best.x = x;
      best.W = pre.W;
      best.degraded_precoder = pre.degraded_accuracy;
    }
  }
  best.converged_to_vertices = true;
  best.iterations = draws;
  best.wall_ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - t_start)
                     .count();
  return best;
}

namespace {

struct ExhaustiveBest {
  Real min_sinr = -1.0;
  long index = -1;
};

// Strict ordering: higher SINR wins, exact ties go to the smaller index.
bool better(const ExhaustiveBest& a, const ExhaustiveBest& b) {
  if (a.min_sinr != b.min_sinr) return a.min_sinr > b.min_sinr;
  return static_cast<unsigned long>(a.index) <
         static_cast<unsigned long>(b.index);
}

long checked_pow(int K, int N) {
  constexpr long kGuard = 1L << 20;
  long total = 1;
  for (int n = 0; n < N; ++n) {
    total *= K;
    if (total > kGuard) {
      throw std::invalid_argument(
          "solve_exhaustive: K^N = " + std::to_string(K) + "^" +
          std::to_string(N) + " exceeds the 2^20 guard");
    }
  }
  return total;
}

solver::TrialResult run_exhaustive(const channel::ChannelSet& channels,
                                   Real P, const RVec& sigma2, int K, int N,
                                   int U, const ExhaustiveOptions& opts,
                                   bool parallel) {
  if (channels.irs_elements() != N || channels.users() != U) {
    throw std::invalid_argument("solve_exhaustive: dimension mismatch");
  }
  const long total = checked_pow(K, N);
  const auto t_start = std::chrono::steady_clock::now();
  geometry::PhaseAlphabet alphabet = geometry::PhaseAlphabet::build(K);
  const std::vector<CMat> phis = sinr::build_all_phis(channels);

  auto config_vector = [&](long c) {
    sinr::PhaseVector x(N + 1);
    x[0] = Complex(1.0, 0.0);
    long rest = c;
    for (int n = 1; n <= N; ++n) {
      x[n] = alphabet.points[rest % K];
      rest /= K;
    }
    return x;
  };
  auto score = [&](long c) {
    sinr::PhaseVector x = config_vector(c);
    std::vector<CVec> h = precoder::effective_channels(x, phis);
    if (opts.use_shared_w) {
      return precoder::downlink_sinrs(h, opts.shared_w, sigma2).minCoeff();
    }
    precoder::Precoder pre = precoder::update_w_maxmin(h, P, sigma2);
    return precoder::downlink_sinrs(h, pre.W, sigma2).minCoeff();
  };

  ExhaustiveBest global;
  if (parallel) {
#pragma omp parallel
    {
      ExhaustiveBest local;
#pragma omp for schedule(static)
      for (long c = 0; c < total; ++c) {
        ExhaustiveBest cand{score(c), c};
        if (better(cand, local)) local = cand;
      }
#pragma omp critical(hullbeam_exhaustive_merge)
      {
        if (better(local, global)) global = local;
      }
    }
  } else {
    for (long c = 0; c < total; ++c) {
      ExhaustiveBest cand{score(c), c};
      if (better(cand, global)) global = cand;
    }
  }

  // Rebuild the winner (cheaper than carrying x/W through the reduction).
  sinr::PhaseVector x = config_vector(global.index);
  std::vector<CVec> h = precoder::effective_channels(x, phis);
  solver::TrialResult out;
  if (opts.use_shared_w) {
    out.W = opts.shared_w;
    out.shared_w = true;
  } else {
    precoder::Precoder pre = precoder::update_w_maxmin(h, P, sigma2);
    out.W = pre.W;
    out.degraded_precoder = pre.degraded_accuracy;
  }
  out.per_user_sinr = precoder::downlink_sinrs(h, out.W, sigma2);
  out.min_sinr = out.per_user_sinr.minCoeff();
  out.x = std::move(x);
  out.converged_to_vertices = true;
  out.iterations = total;
  out.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t_start)
                    .count();
  return out;
}

solver::TrialResult alternate_full(
    const channel::ChannelSet& channels, Real P, const RVec& sigma2, int K,
    const BaselineConfig& cfg,
    const std::function<sinr::PhaseVector(const sinr::CouplingMatrices&,
                                          sinr::PhaseVector)>& inner) {
  cfg.validate();
  const auto t_start = std::chrono::steady_clock::now();
  const int N = channels.irs_elements();
  const std::vector<CMat> phis = sinr::build_all_phis(channels);
  sinr::PhaseVector x = CVec::Ones(N + 1);
  sinr::CouplingMatrices C;
  precoder::Precoder pre;
  bool degraded = false;
  for (int round = 0; round < cfg.outer_rounds; ++round) {
    if (round == 0 && cfg.outer_rounds > 1) {
      // Same bootstrap as the proximal solver: round one runs against the
      // direct-channel matched filter so the paired comparison shares the
      // outer-loop structure exactly.
      std::vector<CVec> h_direct(channels.users());
      for (int u = 0; u < channels.users(); ++u) {
        h_direct[u] = channels.d[u].conjugate();
      }
      pre = precoder::update_w_fallback(h_direct, P, sigma2,
                                        precoder::FallbackMode::Mrt);
    } else {
      std::vector<CVec> h = precoder::effective_channels(x, phis);
      pre = precoder::update_w_maxmin(h, P, sigma2);
      degraded = degraded || pre.degraded_accuracy;
    }
    C = sinr::build_couplings(phis, pre.W, sigma2, P);
    x = inner(C, std::move(x));
  }
  solver::TrialResult out = finish_x_only(
      std::move(x), C, K, static_cast<long>(cfg.outer_rounds) * cfg.iterations);
  out.W = pre.W;
  out.degraded_precoder = degraded;
  out.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t_start)
                    .count();
  return out;
}

}  // namespace

solver::TrialResult solve_exhaustive(const channel::ChannelSet& channels,
                                     Real P, const RVec& sigma2, int K, int N,
                                     int U, const ExhaustiveOptions& opts) {
  return run_exhaustive(channels, P, sigma2, K, N, U, opts, true);
}

solver::TrialResult solve_exhaustive_serial(
    const channel::ChannelSet& channels, Real P, const RVec& sigma2, int K,
    int N, int U, const ExhaustiveOptions& opts) {
  return run_exhaustive(channels, P, sigma2, K, N, U, opts, false);
}

solver::TrialResult solve_gda_full(const channel::ChannelSet& channels,
                                   Real P, const RVec& sigma2, int K,
                                   const BaselineConfig& cfg) {
  geometry::HullPolygon polygon(K);
  return alternate_full(
      channels, P, sigma2, K, cfg,
      [&](const sinr::CouplingMatrices& C, sinr::PhaseVector x) {
        return gda_iterate(C, cfg, polygon, std::move(x),
                           RVec::Constant(C.users(), 1.0 / C.users()),
                           nullptr);
      });
}

solver::TrialResult solve_unit_circle_full(const channel::ChannelSet& channels,
                                           Real P, const RVec& sigma2, int K,
                                           const BaselineConfig& cfg) {
  return alternate_full(
      channels, P, sigma2, K, cfg,
      [&](const sinr::CouplingMatrices& C, sinr::PhaseVector x) {
        // Entries may sit strictly inside the hull after a projected start;
        // push them onto the circle before the first retraction step.
        for (Eigen::Index n = 1; n < x.size(); ++n) {
          Real r = std::abs(x[n]);
          x[n] = r > 0.0 ? x[n] / r : Complex(1.0, 0.0);
        }
        return unit_circle_iterate(C, cfg, std::move(x), nullptr);
      });
}

}  // namespace hullbeam::baselines
