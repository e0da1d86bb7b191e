#pragma once

#include <cstdint>
#include <random>

#include "hullbeam/common.hpp"

namespace hullbeam {

/// SplitMix64 finalizer. Used to derive independent stream seeds from a
/// master seed; the algorithm is fixed so that runs reproduce across
/// implementations of this library.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(mix64(master) ^ mix64(index + 1));
}

/// Deterministic random source: mt19937_64 (bit-exact per the C++ standard)
/// with explicit 53-bit uniform mapping and Box-Muller Gaussians. We avoid
/// std::*_distribution on purpose: their output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  /// Uniform in [0, 1), 53 bits of randomness.
  Real u01() { return static_cast<Real>(gen_() >> 11) * 0x1.0p-53; }

  Real uniform(Real lo, Real hi) { return lo + (hi - lo) * u01(); }

  /// Uniform integer in [0, n).
  int index(int n) {
    int i = static_cast<int>(u01() * n);
    return i < n ? i : n - 1;
  }

  Real gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    auto [g0, g1] = gaussian_pair();
    spare_ = g1;
    has_spare_ = true;
    return g0;
  }

  /// Standard circularly-symmetric complex Gaussian CN(0, 1).
  Complex cgaussian() {
    auto [g0, g1] = gaussian_pair();
    return Complex(g0, g1) * 0.70710678118654752440;
  }

 private:
  std::pair<Real, Real> gaussian_pair() {
    // 1 - u01() lies in (0, 1], keeping the log finite.
    Real r = std::sqrt(-2.0 * std::log(1.0 - u01()));
    Real t = 6.283185307179586476925286766559 * u01();
    return {r * std::cos(t), r * std::sin(t)};
  }

  std::mt19937_64 gen_;
  bool has_spare_ = false;
  Real spare_ = 0.0;
};

}  // namespace hullbeam
