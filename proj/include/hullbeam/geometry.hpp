#pragma once

#include <utility>
#include <vector>

#include "hullbeam/common.hpp"

namespace hullbeam::geometry {

/// The K discrete phase points e^{j2pik/K}, k = 0..K-1. points[0] = 1 and
/// the list is sorted by angle.
struct PhaseAlphabet {
  int K = 0;
  std::vector<Complex> points;

  static PhaseAlphabet build(int K);
};

/// Index of the alphabet point nearest to z; ties broken toward the
/// smallest index. z = 0 maps to index 0.
int nearest_index(Complex z, const PhaseAlphabet& alphabet);

Complex round_to_alphabet(Complex z, const PhaseAlphabet& alphabet);

/// Convex hull of the phase alphabet: the regular K-gon with apothem
/// cos(pi/K). K = 2 degenerates to the segment [-1, 1] on the real axis and
/// is handled explicitly throughout (its half-plane description does not
/// bound the real part).
class HullPolygon {
 public:
  explicit HullPolygon(int K);

  int K() const { return k_; }
  Real apothem() const { return apothem_; }
  const std::vector<Complex>& vertices() const { return vertices_; }

  /// Number of distinct edges: 1 for K = 2, K otherwise.
  int edge_count() const { return k_ == 2 ? 1 : k_; }
  std::pair<Complex, Complex> edge(int e) const;

  bool contains(Complex z, Real tol = 1e-9) const;

  /// Euclidean projection onto the polygon. Returns z unchanged when inside.
  Complex project(Complex z) const;

  /// Distance to the polygon boundary. Inside points report the distance to
  /// the nearest edge; outside points the distance to the polygon. For
  /// K = 2 the hull has empty interior, so this is the distance to the
  /// segment itself.
  Real distance_to_boundary(Complex z) const;

 private:
  int k_;
  Real apothem_;
  std::vector<Complex> vertices_;
  std::vector<Complex> edge_normals_;  // outward unit normals, K >= 3 only
};

/// Global minimizer over the polygon of
///   phi(x) = |x - c|^2 / (2 beta) - lambda |x|.
/// The penalty term is concave, so the minimum is located by comparing a
/// closed candidate set: the hull projection of c, the interior stationary
/// point (c/|c|)(|c| + lambda beta) when feasible, per-edge 1-D minimizers
/// (safeguarded Newton, tolerance 1e-10 in the edge parameter), and all K
/// vertices. lambda = 0 reduces exactly to project().
Complex prox_coordinate(Complex c, Real beta, Real lambda,
                        const HullPolygon& polygon);

/// Nonnegative vector summing to one.
using SimplexPoint = RVec;

bool is_on_simplex(const RVec& y, Real tol = 1e-10);

/// Euclidean projection onto the probability simplex via sort-and-threshold,
/// O(U log U). The sum is renormalized as the final step so the invariants
/// hold exactly.
SimplexPoint project_simplex(const RVec& v);

}  // namespace hullbeam::geometry
