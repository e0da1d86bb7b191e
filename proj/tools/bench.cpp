// Compares the parallel kernels against their serial references: the rank-1
// gradient path vs the dense quadratic-form path, the proximal coordinate
// sweep and exhaustive search at 1 thread vs all threads. Every comparison
// first checks that both sides produce identical results.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "hullbeam/baselines.hpp"
#include "hullbeam/channel.hpp"
#include "hullbeam/precoder.hpp"
#include "hullbeam/rng.hpp"
#include "hullbeam/sinr.hpp"
#include "hullbeam/solver.hpp"

using namespace hullbeam;

namespace {

int max_threads() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
#if defined(_OPENMP)
  omp_set_num_threads(n);
#else
  (void)n;
#endif
}

double time_median_ms(const std::function<void()>& fn, int reps) {
  std::vector<double> ms;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    ms.push_back(std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - t0)
                     .count());
  }
  std::sort(ms.begin(), ms.end());
  return ms[ms.size() / 2];
}

void report(const char* name, double serial_ms, double parallel_ms,
            bool identical) {
  std::printf("%-28s %10.2f ms %10.2f ms %7.2fx   %s\n", name, serial_ms,
              parallel_ms, serial_ms / parallel_ms,
              identical ? "results identical" : "RESULTS DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::string(argv[1]) == "--quick";
  const int reps = quick ? 3 : 5;
  const int threads = max_threads();
  std::printf("hullbeam kernel benchmark (%d threads available)\n", threads);
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel",
              "speedup");

  channel::ScenarioConfig sc;
  sc.M = 8;
  sc.N = quick ? 128 : 256;
  sc.U = 8;
  Rng rng(7);
  channel::ChannelSet ch = channel::draw_channels(sc, rng);
  const Real P = dbm_to_watt(30.0);
  const RVec sigma2 = RVec::Constant(sc.U, dbm_to_watt(-90.0));

  sinr::PhaseVector x = CVec::Ones(sc.N + 1);
  std::vector<CVec> h = precoder::effective_channels(x, ch);
  precoder::Precoder pre = precoder::update_w_maxmin(h, P, sigma2);
  sinr::CouplingMatrices C = sinr::build_couplings(ch, pre.W, sigma2, P);
  geometry::SimplexPoint y = RVec::Constant(sc.U, 1.0 / sc.U);

  {  // Gradient: dense quadratic reference vs rank-1 fast path.
    CVec ref, fast;
    double t_ref = time_median_ms(
        [&] { ref = sinr::grad_x_g_quadratic(x, y, C); }, reps);
    double t_fast =
        time_median_ms([&] { fast = sinr::grad_x_g(x, y, C); }, reps * 10);
    bool same = (ref - fast).norm() <= 1e-10 * std::max(1.0, ref.norm());
    report("grad: dense vs rank-1", t_ref, t_fast, same);
  }

  solver::SolverConfig cfg;
  cfg.T1 = 1;
  cfg.T2 = quick ? 100 : 300;
  geometry::SimplexPoint y0 = RVec::Constant(sc.U, 1.0 / sc.U);

  {  // Inner homotopy pass (prox sweep dominates).
    solver::InnerResult r1, rT;
    set_threads(1);
    double t1 = time_median_ms(
        [&] { r1 = solver::inner_apgda(C, x, y0, cfg, 4); }, reps);
    set_threads(threads);
    double tT = time_median_ms(
        [&] { rT = solver::inner_apgda(C, x, y0, cfg, 4); }, reps);
    bool same = r1.x == rT.x && r1.y == rT.y;
    report("inner apgda (K=4)", t1, tT, same);
  }

  {  // Exhaustive search with per-configuration precoders.
    channel::ScenarioConfig sc2 = sc;
    sc2.N = 14;
    sc2.U = 3;
    Rng rng2(11);
    channel::ChannelSet ch2 = channel::draw_channels(sc2, rng2);
    const RVec sig2 = RVec::Constant(sc2.U, dbm_to_watt(-90.0));
    solver::TrialResult a, b;
    double t_ser = time_median_ms(
        [&] {
          a = baselines::solve_exhaustive_serial(ch2, P, sig2, 2, sc2.N,
                                                 sc2.U);
        },
        reps);
    set_threads(threads);
    double t_par = time_median_ms(
        [&] { b = baselines::solve_exhaustive(ch2, P, sig2, 2, sc2.N, sc2.U); },
        reps);
    bool same = a.x == b.x && a.min_sinr == b.min_sinr;
    report("exhaustive search (2^14)", t_ser, t_par, same);
  }

  return 0;
}
