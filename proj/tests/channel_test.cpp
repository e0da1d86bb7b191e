#include <doctest.h>

#include <cmath>

#include "hullbeam/channel.hpp"
#include "hullbeam/rng.hpp"

using namespace hullbeam;
using namespace hullbeam::channel;

TEST_CASE("steering vectors") {
  CHECK(steering_ula(1, 0.73).size() == 1);
  CHECK(steering_ula(1, 0.73)[0] == Complex(1.0, 0.0));

  CVec broadside = steering_ula(4, 0.0);
  for (int m = 0; m < 4; ++m) CHECK(broadside[m] == Complex(1.0, 0.0));

  CVec endfire = steering_ula(2, M_PI / 2.0);
  CHECK(std::abs(endfire[1] - Complex(-1.0, 0.0)) < 1e-12);

  CHECK(steering_upa(1, 1, 0.4, 0.2).size() == 1);
  CVec flat = steering_upa(3, 2, 0.0, 0.0);
  for (int i = 0; i < 6; ++i) CHECK(flat[i] == Complex(1.0, 0.0));

  // Degenerate panel equals a ULA at the matching directional cosine.
  Real az = 0.6, el = 0.25;
  CVec panel = steering_upa(2, 1, az, el);
  CVec line = steering_ula_dircos(2, std::sin(az) * std::cos(el));
  CHECK((panel - line).norm() < 1e-14);

  CHECK_THROWS_AS(steering_ula(0, 0.0), std::invalid_argument);
}

TEST_CASE("panel_shape") {
  CHECK(panel_shape(500, 0, 0) == std::pair<int, int>(25, 20));
  CHECK(panel_shape(32, 0, 0) == std::pair<int, int>(8, 4));
  CHECK(panel_shape(7, 0, 0) == std::pair<int, int>(7, 1));
  CHECK(panel_shape(12, 3, 4) == std::pair<int, int>(3, 4));
  CHECK_THROWS_AS(panel_shape(12, 5, 4), std::invalid_argument);
}

TEST_CASE("pathloss") {
  ScenarioConfig sc;
  CHECK(sc.pathloss_db(1.0, LinkType::BsIrs) == doctest::Approx(30.0));
  ScenarioConfig sc2 = sc;
  sc2.pl_bs_irs.exponent = 2.0;
  CHECK(sc2.pathloss_db(10.0, LinkType::BsIrs) == doctest::Approx(50.0));
  sc2.pl_bs_user.exponent = 3.5;
  CHECK(sc2.pathloss_db(2.0, LinkType::BsUser) ==
        doctest::Approx(32.6 + 35.0 * std::log10(2.0)));
  CHECK_THROWS_AS(sc.pathloss_db(0.0, LinkType::BsUser),
                  std::invalid_argument);
  CHECK_THROWS_AS(sc.pathloss_db(-1.0, LinkType::IrsUser),
                  std::invalid_argument);
}

TEST_CASE("draw_channels determinism and dimensions") {
  ScenarioConfig sc;
  sc.M = 4;
  sc.N = 6;
  sc.U = 3;
  Rng r1(42), r2(42);
  ChannelSet a = draw_channels(sc, r1);
  ChannelSet b = draw_channels(sc, r2);
  CHECK(a.users() == 3);
  CHECK(a.irs_elements() == 6);
  CHECK(a.bs_antennas() == 4);
  CHECK(a.F == b.F);
  for (int u = 0; u < 3; ++u) {
    CHECK(a.d[u] == b.d[u]);
    CHECK(a.g[u] == b.g[u]);
    CHECK(a.d[u].allFinite());
    CHECK(a.g[u].allFinite());
  }
  CHECK(a.F.allFinite());

  ScenarioConfig bad = sc;
  bad.U = 0;
  Rng r3(1);
  CHECK_THROWS_AS(draw_channels(bad, r3), std::invalid_argument);
}

TEST_CASE("rician limits") {
  ScenarioConfig sc;
  sc.M = 2;
  sc.N = 4;
  sc.U = 1;
  // Pin the user so that only fading varies between draws.
  sc.user_box_min << 100.0, 20.0, 1.5;
  sc.user_box_max << 100.0, 20.0, 1.5;

  // k -> infinity: repeated draws collapse onto the deterministic LOS.
  ScenarioConfig huge = sc;
  huge.rician_k = 1e12;
  Rng r1(7), r2(8);
  ChannelSet a = draw_channels(huge, r1);
  ChannelSet b = draw_channels(huge, r2);
  CHECK((a.F - b.F).norm() / a.F.norm() < 1e-5);
  CHECK((a.d[0] - b.d[0]).norm() / a.d[0].norm() < 1e-5);

  // k = 0 (Rayleigh): mean entry power matches the pathloss over many draws.
  ScenarioConfig ray = sc;
  ray.rician_k = 0.0;
  Real dist = (ray.irs_position - ray.bs_position).norm();
  Real expect = db_to_linear(-ray.pathloss_db(dist, LinkType::BsIrs));
  Rng rng(99);
  Real acc = 0.0;
  long count = 0;
  for (int it = 0; it < 10000; ++it) {
    ChannelSet ch = draw_channels(ray, rng);
    acc += ch.F.squaredNorm();
    count += ch.F.size();
  }
  Real mean = acc / count;
  CHECK(std::abs(mean - expect) / expect < 0.05);
}
