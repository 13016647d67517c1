#include <cmath>

#include <doctest.h>

#include "flexd/errors.hpp"
#include "flexd/geometry.hpp"
#include "flexd/units.hpp"

using namespace flexd;

namespace {
constexpr double kDeg = 0.017453292519943295;
const NodeId kSatK{NodeKind::Satellite, 0};
const NodeId kSatL{NodeKind::Satellite, 1};
const NodeId kUserK{NodeKind::Ground, 0};
}  // namespace

TEST_CASE("circular orbit chord at 550 km / 6.26 deg") {
  // 2 (R_E + h) sin(theta / 2), cross-checked by independent arithmetic here.
  const double d = circular_orbit_chord_m(550e3, 6.26 * kDeg);
  const double expected = 2.0 * (6371e3 + 550e3) * std::sin(0.5 * 6.26 * kDeg);
  CHECK(d == doctest::Approx(expected).epsilon(1e-15));
  CHECK(d == doctest::Approx(755.8e3).epsilon(1e-3));
  CHECK_THROWS_AS(circular_orbit_chord_m(550e3, 0.0), ConfigError);
  CHECK_THROWS_AS(circular_orbit_chord_m(0.0, 0.1), ConfigError);
}

TEST_CASE("chord strictly shrinks with separation") {
  double prev = circular_orbit_chord_m(550e3, 24.0 * kDeg);
  for (double sep = 12.0; sep > 0.1; sep *= 0.5) {
    const double d = circular_orbit_chord_m(550e3, sep * kDeg);
    CHECK(d < prev);
    prev = d;
  }
}

TEST_CASE("slant range endpoints") {
  CHECK(slant_range_m(550e3, 90.0 * kDeg) == doctest::Approx(550e3).epsilon(1e-12));
  // Horizon range exceeds altitude.
  CHECK(slant_range_m(550e3, 0.0) > 2000e3);
  CHECK_THROWS_AS(slant_range_m(550e3, -0.1), ConfigError);
}

TEST_CASE("explicit distance table passthrough") {
  GeometryConfig config;
  config.links.push_back({kSatK, kSatL, LinkGeometry::Explicit{{800e3}}});
  const Timeline timeline{1e-3, 1e-3, 3};
  const GeometryTrack track = build_track(config, timeline);
  for (int t = 0; t < 3; ++t) {
    CHECK(track.distance(kSatK, kSatL, t) == 800e3);
    CHECK(track.distance(kSatL, kSatK, t) == 800e3);  // pair exchange
  }
  CHECK_THROWS_AS(track.distance(kSatK, kUserK, 0), ConfigError);
  CHECK_THROWS_AS(track.distance(kSatK, kSatL, 3), ConfigError);
}

TEST_CASE("per-slot distances must cover the horizon") {
  GeometryConfig config;
  config.links.push_back({kSatK, kSatL, LinkGeometry::Explicit{{700e3, 750e3}}});
  const Timeline timeline{1e-3, 1e-3, 3};
  CHECK_THROWS_AS(build_track(config, timeline), ConfigError);
}

TEST_CASE("zero separation rejected through build_track") {
  GeometryConfig config;
  config.links.push_back({kSatK, kSatL, LinkGeometry::CircularOrbitChord{550e3, 0.0}});
  CHECK_THROWS_AS(build_track(config, Timeline{1e-3, 1e-3, 1}), ConfigError);
}

TEST_CASE("handover map swaps serving satellites per window") {
  const Timeline timeline{1.0, 10.0, 40};

  SUBCASE("initial window keeps the identity association") {
    const HandoverState s = handover_map(timeline, 0);
    CHECK(s.serving_satellite_of_region[0] == 0);
    CHECK(s.serving_satellite_of_region[1] == 1);
  }
  SUBCASE("second window swaps") {
    const HandoverState s = handover_map(timeline, 10);
    CHECK(s.serving_satellite_of_region[0] == 1);
    CHECK(s.serving_satellite_of_region[1] == 0);
  }
  SUBCASE("periodic with period two windows") {
    for (int t = 0; t < 20; ++t) {
      const HandoverState a = handover_map(timeline, t);
      const HandoverState b = handover_map(timeline, t + 20);
      CHECK(a.serving_satellite_of_region[0] == b.serving_satellite_of_region[0]);
      CHECK(a.serving_satellite_of_region[1] == b.serving_satellite_of_region[1]);
    }
  }
  SUBCASE("slot outside horizon throws") {
    CHECK_THROWS_AS(handover_map(timeline, 40), std::out_of_range);
    CHECK_THROWS_AS(handover_map(timeline, -1), std::out_of_range);
  }
}

TEST_CASE("single coverage window keeps association constant") {
  const Timeline timeline{1.0, 64.0, 64};
  for (int t = 0; t < 64; ++t) {
    CHECK(handover_map(timeline, t).serving_satellite_of_region[0] == 0);
  }
}

TEST_CASE("timeline invariants") {
  CHECK_THROWS_AS((Timeline{0.0, 1.0, 1}.validate()), ConfigError);
  CHECK_THROWS_AS((Timeline{1.0, 0.5, 1}.validate()), ConfigError);
  CHECK_THROWS_AS((Timeline{1.0, 1.0, 0}.validate()), ConfigError);
}
