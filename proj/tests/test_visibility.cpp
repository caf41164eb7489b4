#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "covplan/visibility.hpp"
#include "support/test_oracles.hpp"

using namespace covplan;

TEST_CASE("visibility_region with no obstacles is the full disk") {
  const ViewingRegion vr = visibility_region({1.5, -2.0}, {}, 1.0);
  CHECK(vr.area == Catch::Approx(kPi).epsilon(1e-9));
  REQUIRE(vr.boundary.size() == 1);
  CHECK(vr.boundary.front().kind == BoundaryElement::Kind::Arc);
  CHECK_FALSE(vr.touches_obstacle);
  CHECK(vr.contains({1.5, -1.01}));
  CHECK_FALSE(vr.contains({1.5, -0.99}));
}

TEST_CASE("wall through the target leaves a half disk") {
  // big slab whose top edge passes through the origin
  Polygon slab{{{-10, -5}, {10, -5}, {10, 0}, {-10, 0}}};
  const std::vector<Polygon> obs{slab};
  const ViewingRegion vr = visibility_region({0, 0}, obs, 1.0);
  CHECK(vr.area == Catch::Approx(kPi / 2.0).epsilon(1e-6));
  CHECK(vr.contains({0, 0.5}));
  CHECK_FALSE(vr.contains({0, -0.5}));
}

TEST_CASE("target strictly inside an obstacle is rejected") {
  Polygon square{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}};
  CHECK_THROWS_AS(visibility_region({0, 0}, std::vector<Polygon>{square}, 1.0),
                  std::invalid_argument);
}

TEST_CASE("shadow of a unit square, area vs ray casting") {
  Polygon square{{{1, 0}, {2, 0}, {2, 1}, {1, 1}}};
  const std::vector<Polygon> obs{square};
  const ViewingRegion vr = visibility_region({0, 0}, obs, 2.0);
  // closed form for this layout: 1/2 + 7*pi/2
  CHECK(vr.area == Catch::Approx(0.5 + 3.5 * kPi).epsilon(1e-9));
  const double mc = testsupport::raycast_area({0, 0}, obs, 2.0, 200000);
  CHECK(vr.area == Catch::Approx(mc).epsilon(1e-3));
  CHECK(vr.touches_obstacle);
}

TEST_CASE("membership matches the range and line-of-sight predicates") {
  Polygon square{{{1, 0}, {2, 0}, {2, 1}, {1, 1}}};
  Polygon tri{{{-1.5, 0.5}, {-0.5, 0.5}, {-1.0, 1.6}}};
  const std::vector<Polygon> obs{square, tri};
  const ViewingRegion vr = visibility_region({0, 0}, obs, 2.0);
  std::mt19937_64 rng(11);
  auto u = [&](double lo, double hi) {
    return lo + (hi - lo) * (rng() >> 11) * 0x1.0p-53;
  };
  for (int i = 0; i < 5000; ++i) {
    const Point2 p{u(-2.2, 2.2), u(-2.2, 2.2)};
    const bool direct =
        distance(p, vr.target) <= vr.radius && sight_clear(vr.target, p, obs);
    if (std::abs(distance(p, vr.target) - vr.radius) < 1e-6) continue;  // rim ties
    CHECK(vr.contains(p) == direct);
  }
}

TEST_CASE("regions_disjoint on circles") {
  CHECK(regions_disjoint(SensingCircle{{0, 0}, 1.0}, SensingCircle{{3, 0}, 1.0}));
  CHECK_FALSE(regions_disjoint(SensingCircle{{0, 0}, 1.0}, SensingCircle{{1.5, 0}, 1.0}));
  // tangency: closed regions share a point
  CHECK_FALSE(regions_disjoint(SensingCircle{{0, 0}, 1.0}, SensingCircle{{2, 0}, 1.0}));
}

TEST_CASE("regions_disjoint is symmetric") {
  Polygon wall{{{-0.1, -5}, {0.1, -5}, {0.1, 5}, {-0.1, 5}}};
  const std::vector<Polygon> obs{wall};
  const ViewingRegion a = visibility_region({-1.2, 0}, obs, 2.0);
  const ViewingRegion b = visibility_region({1.2, 0}, obs, 2.0);
  CHECK(regions_disjoint(a, b) == regions_disjoint(b, a));
}

TEST_CASE("shared wall separates overlapping disks") {
  Polygon wall{{{-0.1, -5}, {0.1, -5}, {0.1, 5}, {-0.1, 5}}};
  const std::vector<Polygon> obs{wall};
  const ViewingRegion a = visibility_region({-1.2, 0}, obs, 2.0);
  const ViewingRegion b = visibility_region({1.2, 0}, obs, 2.0);
  REQUIRE_FALSE(regions_disjoint(SensingCircle{a.target, 2.0}, SensingCircle{b.target, 2.0}));
  CHECK(regions_disjoint(a, b));

  // dense membership sampling oracle agrees
  bool any_common = false;
  for (int i = 0; i <= 200 && !any_common; ++i) {
    for (int j = 0; j <= 200 && !any_common; ++j) {
      const Point2 p{-3.2 + 6.4 * i / 200.0, -2.0 + 4.0 * j / 200.0};
      if (a.contains(p) && b.contains(p)) any_common = true;
    }
  }
  CHECK_FALSE(any_common);

  // without the wall the same regions overlap
  const ViewingRegion a2 = visibility_region({-1.2, 0}, {}, 2.0);
  const ViewingRegion b2 = visibility_region({1.2, 0}, {}, 2.0);
  CHECK_FALSE(regions_disjoint(a2, b2));
}

TEST_CASE("boundary polyline points lie on the true boundary") {
  Polygon square{{{1, 0}, {2, 0}, {2, 1}, {1, 1}}};
  const std::vector<Polygon> obs{square};
  const ViewingRegion vr = visibility_region({0, 0}, obs, 2.0);
  for (Point2 p : vr.boundary_polyline(1e-3 * vr.radius)) {
    CHECK(distance(p, vr.target) <= vr.radius + 1e-9);
    CHECK(vr.contains(p, 1e-6));
  }
}
