#include "hullbeam/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hullbeam::geometry {

namespace {
constexpr Real kPi = 3.141592653589793238462643383279502884;
}

PhaseAlphabet PhaseAlphabet::build(int K) {
  if (K < 2) {
    throw std::invalid_argument("PhaseAlphabet: K must be >= 2, got " +
                                std::to_string(K));
  }
  PhaseAlphabet a;
  a.K = K;
  a.points.resize(K);
  for (int k = 0; k < K; ++k) {
    // Points landing on the axes are pinned to exact values; polar() would
    // leave 1e-16 residue that breaks exact-tie semantics.
    if ((4L * k) % K == 0) {
      switch ((4L * k / K) % 4) {
        case 0: a.points[k] = Complex(1.0, 0.0); break;
        case 1: a.points[k] = Complex(0.0, 1.0); break;
        case 2: a.points[k] = Complex(-1.0, 0.0); break;
        default: a.points[k] = Complex(0.0, -1.0); break;
      }
    } else {
      a.points[k] = std::polar(1.0, 2.0 * kPi * k / K);
    }
  }
  return a;
}

int nearest_index(Complex z, const PhaseAlphabet& alphabet) {
  int best = 0;
  Real best_d = std::norm(z - alphabet.points[0]);
  for (int k = 1; k < alphabet.K; ++k) {
    Real d = std::norm(z - alphabet.points[k]);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

Complex round_to_alphabet(Complex z, const PhaseAlphabet& alphabet) {
  return alphabet.points[nearest_index(z, alphabet)];
}

HullPolygon::HullPolygon(int K) : k_(K) {
  if (K < 2) {
    throw std::invalid_argument("HullPolygon: K must be >= 2, got " +
                                std::to_string(K));
  }
  apothem_ = std::cos(kPi / K);
  vertices_ = PhaseAlphabet::build(K).points;
  if (K >= 3) {
    edge_normals_.resize(K);
    for (int k = 0; k < K; ++k) {
      // Outward normal through the midpoint of edge k (vertex k to k+1).
      edge_normals_[k] = std::polar(1.0, (2.0 * k + 1.0) * kPi / K);
    }
  }
}

std::pair<Complex, Complex> HullPolygon::edge(int e) const {
  return {vertices_[e], vertices_[(e + 1) % k_]};
}

bool HullPolygon::contains(Complex z, Real tol) const {
  if (k_ == 2) {
    return std::abs(z.imag()) <= tol && z.real() >= -1.0 - tol &&
           z.real() <= 1.0 + tol;
  }
  for (const Complex& n : edge_normals_) {
    Real signed_dist = n.real() * z.real() + n.imag() * z.imag() - apothem_;
    if (signed_dist > tol) return false;
  }
  return true;
}

namespace {

// Closest point to z on the segment [a, b].
Complex project_segment(Complex z, Complex a, Complex b) {
  Complex d = b - a;
  Real len2 = std::norm(d);
  Real t = ((z.real() - a.real()) * d.real() +
            (z.imag() - a.imag()) * d.imag()) /
           len2;
  t = std::clamp(t, 0.0, 1.0);
  return a + t * d;
}

}  // namespace

Complex HullPolygon::project(Complex z) const {
  if (k_ == 2) {
    return Complex(std::clamp(z.real(), -1.0, 1.0), 0.0);
  }
  if (contains(z, 0.0)) return z;
  Complex best = vertices_[0];
  Real best_d = std::norm(z - best);
  for (int e = 0; e < k_; ++e) {
    Complex p = project_segment(z, vertices_[e], vertices_[(e + 1) % k_]);
    Real d = std::norm(z - p);
    if (d < best_d) {
      best_d = d;
      best = p;
    }
  }
  return best;
}

Real HullPolygon::distance_to_boundary(Complex z) const {
  if (k_ == 2) {
    return std::abs(z - project(z));
  }
  Real max_signed = -std::numeric_limits<Real>::infinity();
  for (const Complex& n : edge_normals_) {
    Real s = n.real() * z.real() + n.imag() * z.imag() - apothem_;
    max_signed = std::max(max_signed, s);
  }
  if (max_signed <= 0.0) return -max_signed;  // inside: nearest edge line
  return std::abs(z - project(z));
}

namespace {

struct EdgeQuadratics {
  // |p(t) - c|^2 = A t^2 + B t + C0 and |p(t)|^2 = A t^2 + E t + G
  // for p(t) = a + t (b - a).
  Real A, B, C0, E, G;
};

EdgeQuadratics edge_quadratics(Complex a, Complex b, Complex c) {
  Complex d = b - a;
  Complex ac = a - c;
  EdgeQuadratics q;
  q.A = std::norm(d);
  q.B = 2.0 * (ac.real() * d.real() + ac.imag() * d.imag());
  q.C0 = std::norm(ac);
  q.E = 2.0 * (a.real() * d.real() + a.imag() * d.imag());
  q.G = std::norm(a);
  return q;
}

Real phi_value(Complex x, Complex c, Real beta, Real lambda) {
  return std::norm(x - c) / (2.0 * beta) - lambda * std::abs(x);
}

// phi restricted to the edge: (A t^2 + B t + C0)/(2 beta) - lambda sqrt(Q(t)).
Real phi_deriv(const EdgeQuadratics& q, Real beta, Real lambda, Real t) {
  Real Q = std::max(q.A * t * t + q.E * t + q.G, 0.0);
  Real root = std::sqrt(Q);
  Real smooth = (2.0 * q.A * t + q.B) / (2.0 * beta);
  if (root == 0.0) return smooth;  // kink; handled by the bracketing caller
  return smooth - lambda * (2.0 * q.A * t + q.E) / (2.0 * root);
}

Real phi_second_deriv(const EdgeQuadratics& q, Real beta, Real lambda,
                      Real t) {
  Real Q = std::max(q.A * t * t + q.E * t + q.G, 0.0);
  Real disc = 4.0 * q.A * q.G - q.E * q.E;  // constant, >= 0 for Q >= 0
  if (Q == 0.0) return q.A / beta;
  return q.A / beta - lambda * disc / (4.0 * Q * std::sqrt(Q));
}

// Roots of phi' on [lo, hi] assuming a sign change across the bracket;
// safeguarded Newton with bisection fallback, tolerance 1e-10 in t.
Real solve_bracket(const EdgeQuadratics& q, Real beta, Real lambda, Real lo,
                   Real hi, Real flo) {
  Real t = 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    Real f = phi_deriv(q, beta, lambda, t);
    if ((f < 0.0) == (flo < 0.0)) {
      lo = t;
    } else {
      hi = t;
    }
    Real fp = phi_second_deriv(q, beta, lambda, t);
    Real t_new = (fp != 0.0) ? t - f / fp : t;
    if (!(t_new > lo && t_new < hi)) t_new = 0.5 * (lo + hi);
    if (std::abs(t_new - t) < 1e-10) return t_new;
    t = t_new;
  }
  return t;
}

// Minimizer of phi along one edge; returns the best of the interior
// stationary points and the endpoints.
Complex edge_prox(Complex a, Complex b, Complex c, Real beta, Real lambda) {
  const EdgeQuadratics q = edge_quadratics(a, b, c);
  Complex d = b - a;

  // phi' has at most three monotone pieces on the edge, so a coarse scan
  // captures every sign change; each bracket is polished by Newton.
  constexpr int kScan = 8;
  Real ts[kScan + 1];
  Real fs[kScan + 1];
  for (int i = 0; i <= kScan; ++i) {
    ts[i] = static_cast<Real>(i) / kScan;
    fs[i] = phi_deriv(q, beta, lambda, ts[i]);
  }

  Real best_t = 0.0;
  Real best_phi = phi_value(a, c, beta, lambda);
  auto consider = [&](Real t) {
    Complex p = a + t * d;
    Real v = phi_value(p, c, beta, lambda);
    if (v < best_phi) {
      best_phi = v;
      best_t = t;
    }
  };
  consider(1.0);
  for (int i = 0; i < kScan; ++i) {
    if (fs[i] == 0.0) {
      consider(ts[i]);
    } else if ((fs[i] < 0.0) != (fs[i + 1] < 0.0)) {
      consider(solve_bracket(q, beta, lambda, ts[i], ts[i + 1], fs[i]));
    }
  }
  return a + best_t * d;
}

// K = 2: the hull is the segment [-1, 1]; the two smooth pieces of
// phi(t) = ((t - cr)^2 + ci^2)/(2 beta) - lambda |t| have closed-form minima.
Complex prox_segment(Complex c, Real beta, Real lambda) {
  Real cr = c.real();
  Real t_pos = std::clamp(cr + lambda * beta, 0.0, 1.0);
  Real t_neg = std::clamp(cr - lambda * beta, -1.0, 0.0);
  Real phi_pos = (t_pos - cr) * (t_pos - cr) / (2.0 * beta) - lambda * t_pos;
  Real phi_neg = (t_neg - cr) * (t_neg - cr) / (2.0 * beta) + lambda * t_neg;
  return Complex(phi_pos <= phi_neg ? t_pos : t_neg, 0.0);
}

}  // namespace

Complex prox_coordinate(Complex c, Real beta, Real lambda,
                        const HullPolygon& polygon) {
  if (!(beta > 0.0)) {
    throw std::invalid_argument("prox_coordinate: beta must be positive");
  }
  if (lambda < 0.0) {
    throw std::invalid_argument("prox_coordinate: lambda must be >= 0");
  }
  if (lambda == 0.0) return polygon.project(c);
  if (polygon.K() == 2) return prox_segment(c, beta, lambda);

  Complex best = polygon.project(c);
  Real best_phi = phi_value(best, c, beta, lambda);
  auto consider = [&](Complex x) {
    Real v = phi_value(x, c, beta, lambda);
    if (v < best_phi) {
      best_phi = v;
      best = x;
    }
  };

  // Interior stationary point: the only local minimum of phi off the
  // boundary lies on the ray through c at radius |c| + lambda beta. With
  // c = 0 phi is radial and any direction attains the optimum radius; the
  // ray toward vertex 0 is the deterministic choice.
  Real r = std::abs(c);
  if (r > 0.0) {
    Complex cand = c * ((r + lambda * beta) / r);
    if (polygon.contains(cand, 0.0)) consider(cand);
  } else {
    consider(Complex(std::min(lambda * beta, 1.0), 0.0));
  }

  for (int e = 0; e < polygon.edge_count(); ++e) {
    auto [a, b] = polygon.edge(e);
    consider(edge_prox(a, b, c, beta, lambda));
  }
  for (const Complex& v : polygon.vertices()) consider(v);
  return best;
}

bool is_on_simplex(const RVec& y, Real tol) {
  if (y.size() == 0) return false;
  if (y.minCoeff() < -tol) return false;
  return std::abs(y.sum() - 1.0) <= tol;
}

SimplexPoint project_simplex(const RVec& v) {
  const Eigen::Index n = v.size();
  if (n == 0) {
    throw std::invalid_argument("project_simplex: empty input");
  }
  std::vector<Real> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<Real>());
  Real cumsum = 0.0;
  Real tau = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    cumsum += u[k];
    Real candidate = (cumsum - 1.0) / static_cast<Real>(k + 1);
    if (u[k] - candidate > 0.0) {
      tau = candidate;
    }
  }
  RVec y = (v.array() - tau).cwiseMax(0.0);
  y /= y.sum();
  return y;
}

}  // namespace hullbeam::geometry
