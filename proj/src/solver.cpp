#include "hullbeam/solver.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace hullbeam::solver {

void SolverConfig::validate() const {
  if (T1 < 1 || T2 < 0) {
    throw std::invalid_argument("SolverConfig: T1 >= 1 and T2 >= 0 required");
  }
  if (!(lambda_init >= 0.0) || !(lambda_growth > 1.0) || lambda_period < 1) {
    throw std::invalid_argument("SolverConfig: bad lambda schedule");
  }
  if (!(alpha0 > 0.0) || !(beta0 > 0.0) || !(stepsize_decay > 0.0) ||
      stepsize_decay > 1.0) {
    throw std::invalid_argument("SolverConfig: bad stepsizes");
  }
}

void SolveTrace::write_csv(std::ostream& os) const {
  os << "iteration,min_sinr_db,lambda,alpha,beta\n";
  char buf[160];
  for (size_t i = 0; i < inner.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g\n", i + 1,
                  inner[i].min_sinr_db, inner[i].lambda, inner[i].alpha,
                  inner[i].beta);
    os << buf;
  }
}

RVec TrialResult::per_user_sinr_db() const {
  RVec db(per_user_sinr.size());
  for (Eigen::Index u = 0; u < per_user_sinr.size(); ++u) {
    db[u] = linear_to_db(per_user_sinr[u]);
  }
  return db;
}

Real lambda_schedule(long j, const SolverConfig& cfg,
                     const sinr::LipschitzBounds* bounds) {
  if (j < 1) throw std::invalid_argument("lambda_schedule: j must be >= 1");
  Real lam = cfg.lambda_init *
             std::pow(cfg.lambda_growth,
                      static_cast<Real>(j / cfg.lambda_period));
  if (cfg.lambda_cap == LambdaCapMode::EquivalenceThreshold &&
      bounds != nullptr) {
    lam = std::min(lam, bounds->lambda_equiv);
  }
  return lam;
}

RVec normalized_sup(const RVec& v) {
  Real scale = v.cwiseAbs().maxCoeff();
  if (scale > 0.0) return v / scale;
  return v;
}

void normalize_ascent_direction(CVec& g) {
  Real scale = 0.0;
  for (Eigen::Index n = 1; n < g.size(); ++n) {
    scale = std::max(scale, std::abs(g[n]));
  }
  if (scale > 0.0) g /= scale;
}

namespace {

struct InnerState {
  sinr::PhaseVector x;
  geometry::SimplexPoint y;
  Real alpha, beta;
};

void run_inner(const sinr::CouplingMatrices& C, const SolverConfig& cfg,
               const geometry::HullPolygon& polygon,
               const sinr::LipschitzBounds* bounds, InnerState& st,
               SolveTrace* trace) {
  const Eigen::Index n_coords = st.x.size();
  Real lam_used = 0.0, alpha_used = 0.0, beta_used = 0.0;
  for (long j = 1; j <= cfg.T2; ++j) {
    RVec f = sinr::all_sinrs(st.x, C);
    if (trace != nullptr && j >= 2) {
      trace->inner.push_back({linear_to_db(f.minCoeff()), st.y.dot(f),
                              lam_used, alpha_used, beta_used});
    }
    Real lam = lambda_schedule(j, cfg, bounds);
    st.y = geometry::project_simplex(st.y - st.alpha * normalized_sup(f));
    CVec grad = sinr::grad_x_g(st.x, st.y, C);
    normalize_ascent_direction(grad);
#pragma omp parallel for schedule(static) if (n_coords >= 64)
    for (Eigen::Index n = 1; n < n_coords; ++n) {
      st.x[n] = geometry::prox_coordinate(st.x[n] + st.beta * grad[n],
                                          st.beta, lam, polygon);
    }
    lam_used = lam;
    alpha_used = st.alpha;
    beta_used = st.beta;
    st.alpha *= cfg.stepsize_decay;
    st.beta *= cfg.stepsize_decay;
  }
  if (trace != nullptr && cfg.T2 >= 1) {
    RVec f = sinr::all_sinrs(st.x, C);
    trace->inner.push_back({linear_to_db(f.minCoeff()), st.y.dot(f), lam_used,
                            alpha_used, beta_used});
  }
}

}  // namespace

InnerResult inner_apgda(const sinr::CouplingMatrices& C,
                        const sinr::PhaseVector& x0,
                        const geometry::SimplexPoint& y0,
                        const SolverConfig& cfg, int K, SolveTrace* trace) {
  cfg.validate();
  geometry::HullPolygon polygon(K);
  if (!sinr::is_feasible_phase_vector(x0, polygon)) {
    throw std::invalid_argument("inner_apgda: infeasible starting point");
  }
  if (!geometry::is_on_simplex(y0)) {
    throw std::invalid_argument("inner_apgda: y0 not on the simplex");
  }
  sinr::LipschitzBounds bounds;
  const sinr::LipschitzBounds* bounds_ptr = nullptr;
  if (cfg.lambda_cap == LambdaCapMode::EquivalenceThreshold) {
    bounds = sinr::lipschitz_bounds(C, K);
    bounds_ptr = &bounds;
  }
  InnerState st{x0, y0, cfg.alpha0, cfg.beta0};
  run_inner(C, cfg, polygon, bounds_ptr, st, trace);
  return {st.x, st.y};
}

Complex random_hull_point(const geometry::HullPolygon& polygon, Rng& rng) {
  if (polygon.K() == 2) {
    return Complex(rng.uniform(-1.0, 1.0), 0.0);
  }
  for (;;) {
    Complex z(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    if (polygon.contains(z, 0.0)) return z;
  }
}

TrialResult solve(const channel::ChannelSet& channels,
                  const channel::ScenarioConfig& scenario,
                  const SolverConfig& cfg, Real P, const RVec& sigma2, int K,
                  InitMode init, Rng* init_rng, SolveTrace* trace) {
  cfg.validate();
  if (channels.users() != scenario.U ||
      channels.irs_elements() != scenario.N ||
      channels.bs_antennas() != scenario.M) {
    throw std::invalid_argument("solve: channels do not match the scenario");
  }
  const auto t_start = std::chrono::steady_clock::now();
  const int N = channels.irs_elements();
  const int U = channels.users();
  geometry::HullPolygon polygon(K);
  geometry::PhaseAlphabet alphabet = geometry::PhaseAlphabet::build(K);
  const std::vector<CMat> phis = sinr::build_all_phis(channels);

  sinr::PhaseVector x = CVec::Ones(N + 1);
  if (init == InitMode::Random) {
    if (init_rng == nullptr) {
      throw std::invalid_argument("solve: random init requires an rng");
    }
    for (int n = 1; n <= N; ++n) x[n] = random_hull_point(polygon, *init_rng);
  }
  geometry::SimplexPoint y = RVec::Constant(U, 1.0 / U);

  precoder::Precoder pre;
  sinr::CouplingMatrices C;
  bool degraded = false;
  for (int i = 0; i < cfg.T1; ++i) {
    if (i == 0 && cfg.T1 > 1) {
      // Bootstrap round: matched filtering to the direct channels. The
      // balanced precoder at the starting configuration would make that
      // configuration a per-coordinate fixed point of the ascent and freeze
      // the alternation where it began.
      std::vector<CVec> h_direct(U);
      for (int u = 0; u < U; ++u) h_direct[u] = channels.d[u].conjugate();
      pre = precoder::update_w_fallback(h_direct, P, sigma2,
                                        precoder::FallbackMode::Mrt);
    } else {
      std::vector<CVec> h = precoder::effective_channels(x, phis);
      pre = precoder::update_w_maxmin(h, P, sigma2);
      degraded = degraded || pre.degraded_accuracy;
    }
    C = sinr::build_couplings(phis, pre.W, sigma2, P);

    if (trace != nullptr) {
      trace->outer_min_sinr_db.push_back(linear_to_db(sinr::min_sinr(x, C)));
      trace->outer_wall_ms.push_back(
          std::chrono::duration<double, std::milli>(
              std::chrono::steady_clock::now() - t_start)
              .count());
    }

    SolverConfig inner_cfg = cfg;
    if (!cfg.reset_stepsizes_each_outer) {
      Real factor = std::pow(cfg.stepsize_decay,
                             static_cast<Real>(i) * cfg.T2);
      inner_cfg.alpha0 = cfg.alpha0 * factor;
      inner_cfg.beta0 = cfg.beta0 * factor;
    }
    sinr::LipschitzBounds bounds;
    const sinr::LipschitzBounds* bounds_ptr = nullptr;
    if (cfg.lambda_cap == LambdaCapMode::EquivalenceThreshold) {
      bounds = sinr::lipschitz_bounds(C, K);
      bounds_ptr = &bounds;
    }
    InnerState st{x, y, inner_cfg.alpha0, inner_cfg.beta0};
    run_inner(C, inner_cfg, polygon, bounds_ptr, st, trace);
    x = st.x;
    y = st.y;
  }

  TrialResult out;
  out.converged_to_vertices = true;
  for (int n = 1; n <= N; ++n) {
    if (std::abs(x[n] - geometry::round_to_alphabet(x[n], alphabet)) > 1e-6) {
      out.converged_to_vertices = false;
      break;
    }
  }
  if (cfg.final_round) {
    for (int n = 1; n <= N; ++n) {
      x[n] = geometry::round_to_alphabet(x[n], alphabet);
    }
  }
  out.per_user_sinr = sinr::all_sinrs(x, C);
  out.min_sinr = out.per_user_sinr.minCoeff();
  out.iterations = static_cast<long>(cfg.T1) * cfg.T2;
  out.x = x;
  out.W = pre.W;
  out.degraded_precoder = degraded;
  out.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t_start)
                    .count();
  return out;
}

}  // namespace hullbeam::solver
