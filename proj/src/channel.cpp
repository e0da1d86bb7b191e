#include "hullbeam/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hullbeam::channel {

namespace {
constexpr Real kPi = 3.141592653589793238462643383279502884;

void require(bool ok, const char* field) {
  if (!ok) {
    throw std::invalid_argument(std::string("ScenarioConfig: invalid field ") +
                                field);
  }
}
}  // namespace

void ScenarioConfig::validate() const {
  require(M >= 1, "M");
  require(N >= 1, "N");
  require(U >= 1, "U");
  require(rician_k >= 0.0, "rician_k");
  require(carrier_freq_hz > 0.0, "carrier_freq_hz");
  require(reference_distance_m > 0.0, "reference_distance_m");
  require(bs_position.allFinite(), "bs_position");
  require(irs_position.allFinite(), "irs_position");
  require(user_box_min.allFinite() && user_box_max.allFinite() &&
              (user_box_min.array() <= user_box_max.array()).all(),
          "user_box");
  require(irs_rows >= 0 && irs_cols >= 0, "irs_rows/irs_cols");
  if (irs_rows > 0 || irs_cols > 0) {
    require(irs_rows > 0 && irs_cols > 0 && irs_rows * irs_cols == N,
            "irs_rows*irs_cols != N");
  }
}

Real ScenarioConfig::pathloss_db(Real distance_m, LinkType link) const {
  if (!(distance_m > 0.0)) {
    throw std::invalid_argument("pathloss_db: distance must be positive");
  }
  const PathlossParams& p = link == LinkType::BsUser    ? pl_bs_user
                            : link == LinkType::BsIrs ? pl_bs_irs
                                                      : pl_irs_user;
  return p.pl0_db +
         10.0 * p.exponent * std::log10(distance_m / reference_distance_m);
}

CVec steering_ula_dircos(int M, Real u) {
  if (M < 1) throw std::invalid_argument("steering_ula: M must be >= 1");
  CVec a(M);
  for (int m = 0; m < M; ++m) {
    a[m] = std::polar(1.0, kPi * m * u);
  }
  return a;
}

CVec steering_ula(int M, Real angle_rad) {
  return steering_ula_dircos(M, std::sin(angle_rad));
}

CVec steering_upa_dircos(int N1, int N2, Real u1, Real u2) {
  if (N1 < 1 || N2 < 1) {
    throw std::invalid_argument("steering_upa: N1, N2 must be >= 1");
  }
  CVec a(static_cast<Eigen::Index>(N1) * N2);
  for (int i1 = 0; i1 < N1; ++i1) {
    for (int i2 = 0; i2 < N2; ++i2) {
      a[static_cast<Eigen::Index>(i1) * N2 + i2] =
          std::polar(1.0, kPi * (i1 * u1 + i2 * u2));
    }
  }
  return a;
}

CVec steering_upa(int N1, int N2, Real azimuth_rad, Real elevation_rad) {
  return steering_upa_dircos(N1, N2,
                             std::sin(azimuth_rad) * std::cos(elevation_rad),
                             std::sin(elevation_rad));
}

std::pair<int, int> panel_shape(int N, int rows_hint, int cols_hint) {
  if (N < 1) throw std::invalid_argument("panel_shape: N must be >= 1");
  if (rows_hint > 0 && cols_hint > 0) {
    if (rows_hint * cols_hint != N) {
      throw std::invalid_argument("panel_shape: rows * cols != N");
    }
    return {rows_hint, cols_hint};
  }
  int cols = 1;
  for (int d = 1; static_cast<long>(d) * d <= N; ++d) {
    if (N % d == 0) cols = d;
  }
  return {N / cols, cols};
}

namespace {

struct Geometry {
  Real u_bs_to_irs;                  // directional cosine at the BS array
  Real u1_irs_from_bs, u2_irs_from_bs;  // arrival cosines on the panel axes
  Real dist_bs_irs;
};

// Directional cosine of the unit direction from `from` to `to` along `axis`.
Real dircos(const Eigen::Vector3d& from, const Eigen::Vector3d& to, int axis) {
  Eigen::Vector3d v = to - from;
  return v[axis] / v.norm();
}

}  // namespace

ChannelSet draw_channels(const ScenarioConfig& config, Rng& rng) {
  config.validate();
  const int M = config.M, N = config.N, U = config.U;
  auto [n1, n2] = panel_shape(N, config.irs_rows, config.irs_cols);

  const Real los_w = std::sqrt(config.rician_k / (config.rician_k + 1.0));
  const Real nlos_w = std::sqrt(1.0 / (config.rician_k + 1.0));

  // User positions: three uniforms per user, axis order x, y, z.
  std::vector<Eigen::Vector3d> users(U);
  for (int u = 0; u < U; ++u) {
    for (int ax = 0; ax < 3; ++ax) {
      users[u][ax] =
          rng.uniform(config.user_box_min[ax], config.user_box_max[ax]);
    }
  }

  ChannelSet ch;
  ch.d.resize(U);
  ch.g.resize(U);

  for (int u = 0; u < U; ++u) {
    Real dist = (users[u] - config.bs_position).norm();
    Real amp = std::sqrt(
        db_to_linear(-config.pathloss_db(dist, LinkType::BsUser)));
    CVec los = steering_ula_dircos(
        M, dircos(config.bs_position, users[u], 0));
    CVec nlos(M);
    for (int m = 0; m < M; ++m) nlos[m] = rng.cgaussian();
    ch.d[u] = amp * (los_w * los + nlos_w * nlos);
  }

  {
    Real dist = (config.irs_position - config.bs_position).norm();
    Real amp =
        std::sqrt(db_to_linear(-config.pathloss_db(dist, LinkType::BsIrs)));
    CVec a_irs = steering_upa_dircos(
        n1, n2, dircos(config.irs_position, config.bs_position, 0),
        dircos(config.irs_position, config.bs_position, 2));
    CVec a_bs = steering_ula_dircos(
        M, dircos(config.bs_position, config.irs_position, 0));
    ch.F.resize(N, M);
    for (int n = 0; n < N; ++n) {
      for (int m = 0; m < M; ++m) {
        ch.F(n, m) =
            amp * (los_w * a_irs[n] * a_bs[m] + nlos_w * rng.cgaussian());
      }
    }
  }

  for (int u = 0; u < U; ++u) {
    Real dist = (users[u] - config.irs_position).norm();
    Real amp = std::sqrt(
        db_to_linear(-config.pathloss_db(dist, LinkType::IrsUser)));
    CVec los = steering_upa_dircos(
        n1, n2, dircos(config.irs_position, users[u], 0),
        dircos(config.irs_position, users[u], 2));
    Eigen::RowVectorXcd row(N);
    for (int n = 0; n < N; ++n) {
      row[n] = amp * (los_w * los[n] + nlos_w * rng.cgaussian());
    }
    ch.g[u] = row;
  }
  return ch;
}

}  // namespace hullbeam::channel
