#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hullbeam/common.hpp"
#include "hullbeam/rng.hpp"

namespace hullbeam::channel {

enum class LinkType { BsUser, BsIrs, IrsUser };

/// Log-distance pathloss: PL0 + 10 gamma log10(d / d0) in dB.
struct PathlossParams {
  Real pl0_db = 30.0;
  Real exponent = 2.2;
};

struct ScenarioConfig {
  int M = 8;   // BS antennas (uniform linear array along the x axis)
  int N = 32;  // IRS elements (uniform planar array, axes x and z)
  int U = 2;   // single-antenna users

  Real carrier_freq_hz = 2.6e9;
  Real rician_k = 10.0;  // linear Rician factor

  Eigen::Vector3d bs_position{0.0, 0.0, 10.0};
  Eigen::Vector3d irs_position{100.0, 20.0, 5.0};
  Eigen::Vector3d user_box_min{90.0, 10.0, 1.5};
  Eigen::Vector3d user_box_max{110.0, 30.0, 1.5};

  PathlossParams pl_bs_user{32.6, 3.67};
  PathlossParams pl_bs_irs{30.0, 2.2};
  PathlossParams pl_irs_user{30.0, 2.2};
  Real reference_distance_m = 1.0;

  // IRS panel factorization; 0 means auto (most-square split, rows >= cols).
  int irs_rows = 0;
  int irs_cols = 0;

  std::uint64_t seed = 1;

  void validate() const;  // throws std::invalid_argument naming the field
  Real pathloss_db(Real distance_m, LinkType link) const;
};

/// One Monte-Carlo draw of every link: d[u] is the direct BS->user channel
/// (length M), F the BS->IRS matrix (N x M), g[u] the IRS->user row
/// (length N).
struct ChannelSet {
  std::vector<CVec> d;
  CMat F;
  std::vector<Eigen::RowVectorXcd> g;

  int users() const { return static_cast<int>(d.size()); }
  int irs_elements() const { return static_cast<int>(F.rows()); }
  int bs_antennas() const { return static_cast<int>(F.cols()); }
};

/// Half-wavelength ULA response, entries e^{j pi m sin(angle)}.
CVec steering_ula(int M, Real angle_rad);

/// ULA response parametrized directly by the directional cosine u = sin(angle).
CVec steering_ula_dircos(int M, Real u);

/// Half-wavelength UPA response: Kronecker product of the two panel-axis
/// ramps, entry (i1, i2) -> e^{j pi (i1 u1 + i2 u2)} at flat index
/// i1 * N2 + i2, with u1 = sin(az) cos(el) and u2 = sin(el).
CVec steering_upa(int N1, int N2, Real azimuth_rad, Real elevation_rad);
CVec steering_upa_dircos(int N1, int N2, Real u1, Real u2);

/// Panel factorization N = rows * cols. Hints of 0 select the most-square
/// split with rows >= cols (e.g. 500 -> 25 x 20).
std::pair<int, int> panel_shape(int N, int rows_hint, int cols_hint);

/// Rician draw of all links. Each entry has mean power equal to the
/// pathloss-implied power; the LOS component points along the true geometry.
/// Fully determined by (config, rng state); the stream consumption order is
/// fixed: user positions, then d[0..U), then F row-major, then g[0..U).
ChannelSet draw_channels(const ScenarioConfig& config, Rng& rng);

}  // namespace hullbeam::channel
