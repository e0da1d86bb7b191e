#include <doctest.h>

#include <cmath>

#include "hullbeam/baselines.hpp"
#include "hullbeam/solver.hpp"
#include "support/oracles.hpp"

using namespace hullbeam;
using namespace hullbeam::baselines;
using hullbeam::testing::make_instance;
using hullbeam::testing::random_couplings;

TEST_CASE("soft_min approaches the true minimum") {
  RVec f(2);
  f << 3.0, 5.0;
  for (Real tau : {1.0, 0.1, 1e-3}) {
    Real sm = soft_min(f, tau);
    CHECK(sm <= f.minCoeff());
    CHECK(f.minCoeff() - sm <= tau * std::log(2.0) + 1e-15);
  }
  CHECK(std::abs(soft_min(f, 1e-3) - 3.0) < 1e-3);
  RVec w = soft_min_weights(f, 1e-3);
  CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("unit-circle iterates stay on the circle and align a single path") {
  Rng rng(8);
  // U = 1, N = 1: a two-term ratio with a closed-form optimum. The optimum
  // phase aligns the configurable path with the direct one.
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<CVec> streams(1);
    streams[0].resize(2);
    streams[0][0] = rng.cgaussian();
    streams[0][1] = rng.cgaussian();
    CVec a = streams[0];
    sinr::CouplingMatrices C(std::move(streams), RVec::Constant(1, 1.0));

    // Geometrically decaying steps bound the total angular travel by
    // step0 / (1 - decay); budget for a trip across the whole circle.
    BaselineConfig cfg;
    cfg.iterations = 4000;
    cfg.step0 = 0.2;
    cfg.step_decay = 0.999;
    solver::TrialResult r = solve_unit_circle(C, cfg, 8);

    // x^H a = conj(x1) a1 + a0; the maximizer is x1* = a1/|a1| e^{-j arg a0}.
    Complex xstar = (a[1] / std::abs(a[1])) *
                    std::polar(1.0, -std::arg(a[0]));
    geometry::PhaseAlphabet alphabet = geometry::PhaseAlphabet::build(8);
    CHECK(r.x[1] == geometry::round_to_alphabet(xstar, alphabet));
  }

  // Retraction invariant: every iterate is unit-modulus; check via a run
  // whose final point is an arbitrary prefix's final iterate.
  Rng rng2(9);
  sinr::CouplingMatrices C = random_couplings(rng2, 5, 2);
  for (int iters : {1, 3, 10, 50}) {
    BaselineConfig cfg;
    cfg.iterations = iters;
    cfg.outer_rounds = 1;
    solver::SolveTrace trace;
    solver::TrialResult r = solve_unit_circle(C, cfg, 4, &trace);
    CHECK(static_cast<int>(trace.inner.size()) == iters);
    // Output is on the alphabet (rounded), hence unit modulus.
    for (Eigen::Index n = 1; n < r.x.size(); ++n) {
      CHECK(std::abs(std::abs(r.x[n]) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("gda equals the proximal solver at lambda = 0") {
  Rng rng(44);
  sinr::CouplingMatrices C = random_couplings(rng, 6, 3);

  BaselineConfig bcfg;
  bcfg.iterations = 150;
  solver::SolveTrace gda_trace;
  solver::TrialResult g = solve_gda(C, bcfg, 4, &gda_trace);

  solver::SolverConfig scfg;
  scfg.T1 = 1;
  scfg.T2 = 150;
  scfg.lambda_init = 0.0;  // growth multiplies zero: the penalty stays off
  solver::SolveTrace apgda_trace;
  solver::InnerResult r = solver::inner_apgda(
      C, CVec::Ones(7), RVec::Constant(3, 1.0 / 3.0), scfg, 4, &apgda_trace);

  REQUIRE(gda_trace.inner.size() == apgda_trace.inner.size());
  for (size_t j = 0; j < gda_trace.inner.size(); ++j) {
    CHECK(gda_trace.inner[j].min_sinr_db == apgda_trace.inner[j].min_sinr_db);
    CHECK(gda_trace.inner[j].g == apgda_trace.inner[j].g);
  }
  geometry::PhaseAlphabet alphabet = geometry::PhaseAlphabet::build(4);
  for (Eigen::Index n = 1; n < r.x.size(); ++n) {
    CHECK(geometry::round_to_alphabet(r.x[n], alphabet) == g.x[n]);
  }

  // Feasibility of the gda output pre-rounding is implied by the iterate
  // equality above; the rounded output is on the alphabet by construction.
  geometry::HullPolygon poly(4);
  for (Eigen::Index n = 1; n < g.x.size(); ++n) {
    CHECK(poly.contains(g.x[n], 1e-12));
  }
}

TEST_CASE("random search improves with more draws") {
  auto instance = make_instance(60, 6, 2, 4);
  Rng r1(7), r2(7);
  solver::TrialResult few = solve_random(instance.channels, instance.P,
                                         instance.sigma2, 2, 3, r1);
  solver::TrialResult many = solve_random(instance.channels, instance.P,
                                          instance.sigma2, 2, 8, r2);
  CHECK(few.iterations == 3);
  CHECK(many.min_sinr >= few.min_sinr);
  CHECK_THROWS_AS(
      solve_random(instance.channels, instance.P, instance.sigma2, 2, 0, r1),
      std::invalid_argument);
}

TEST_CASE("exhaustive search") {
  // N = 1, K = 2: the best of two evaluations, checked inline.
  {
    auto instance = make_instance(61, 1, 1, 3);
    solver::TrialResult r = baselines::solve_exhaustive(
        instance.channels, instance.P, instance.sigma2, 2, 1, 1);
    CHECK(r.iterations == 2);
    geometry::PhaseAlphabet a2 = geometry::PhaseAlphabet::build(2);
    Real best = -1.0;
    for (int c = 0; c < 2; ++c) {
      sinr::PhaseVector x(2);
      x[0] = Complex(1.0, 0.0);
      x[1] = a2.points[c];
      std::vector<CVec> h =
          precoder::effective_channels(x, instance.channels);
      precoder::Precoder pre =
          precoder::update_w_maxmin(h, instance.P, instance.sigma2);
      best = std::max(
          best,
          precoder::downlink_sinrs(h, pre.W, instance.sigma2).minCoeff());
    }
    CHECK(r.min_sinr == doctest::Approx(best).epsilon(1e-12));
  }

  // Guard on the search-space size.
  {
    auto instance = make_instance(62, 4, 1, 3);
    CHECK_THROWS_AS(baselines::solve_exhaustive(instance.channels, instance.P,
                                                instance.sigma2, 64, 4, 1),
                    std::invalid_argument);
  }

  // Parallel and serial sweeps agree exactly; exhaustive dominates every
  // other algorithm on the same instance.
  {
    auto instance = make_instance(63, 6, 2, 4);
    solver::TrialResult par = baselines::solve_exhaustive(
        instance.channels, instance.P, instance.sigma2, 2, 6, 2);
    solver::TrialResult ser = baselines::solve_exhaustive_serial(
        instance.channels, instance.P, instance.sigma2, 2, 6, 2);
    CHECK(par.x == ser.x);
    CHECK(par.min_sinr == ser.min_sinr);

    solver::SolverConfig scfg;
    scfg.T1 = 2;
    scfg.T2 = 300;
    solver::TrialResult chr =
        solver::solve(instance.channels, instance.scenario, scfg, instance.P,
                      instance.sigma2, 2);
    BaselineConfig bcfg;
    bcfg.iterations = 300;
    bcfg.outer_rounds = 2;
    solver::TrialResult gda = solve_gda_full(instance.channels, instance.P,
                                             instance.sigma2, 2, bcfg);
    solver::TrialResult rie = solve_unit_circle_full(
        instance.channels, instance.P, instance.sigma2, 2, bcfg);
    Rng rng(64);
    solver::TrialResult rnd = solve_random(instance.channels, instance.P,
                                           instance.sigma2, 2, 10, rng);
    const Real tol = 1e-9;
    CHECK(par.min_sinr >= chr.min_sinr * (1.0 - tol));
    CHECK(par.min_sinr >= gda.min_sinr * (1.0 - tol));
    CHECK(par.min_sinr >= rie.min_sinr * (1.0 - tol));
    CHECK(par.min_sinr >= rnd.min_sinr * (1.0 - tol));

    // Shared-W mode is flagged and dominated by per-config precoding.
    ExhaustiveOptions opts;
    opts.use_shared_w = true;
    opts.shared_w = chr.W;
    solver::TrialResult shared = baselines::solve_exhaustive(
        instance.channels, instance.P, instance.sigma2, 2, 6, 2, opts);
    CHECK(shared.shared_w);
    CHECK(par.min_sinr >= shared.min_sinr * (1.0 - tol));
  }
}

TEST_CASE("paired ordering on small instances") {
  // The penalty method should beat its own ablation and the unit-circle
  // rounding on average over paired channel draws.
  const int trials = 8;
  Real chr_mean = 0.0, gda_mean = 0.0, rie_mean = 0.0;
  for (int t = 0; t < trials; ++t) {
    auto instance = make_instance(7000 + t, 10, 3, 4);
    solver::SolverConfig scfg;
    scfg.T1 = 4;
    scfg.T2 = 400;
    BaselineConfig bcfg;
    bcfg.iterations = 400;
    bcfg.outer_rounds = 4;
    chr_mean += solver::solve(instance.channels, instance.scenario, scfg,
                              instance.P, instance.sigma2, 2)
                    .min_sinr_db();
    gda_mean += solve_gda_full(instance.channels, instance.P, instance.sigma2,
                               2, bcfg)
                    .min_sinr_db();
    rie_mean += solve_unit_circle_full(instance.channels, instance.P,
                                       instance.sigma2, 2, bcfg)
                    .min_sinr_db();
  }
  CHECK(chr_mean / trials >= gda_mean / trials - 1e-9);
  CHECK(chr_mean / trials >= rie_mean / trials - 1e-9);
}
