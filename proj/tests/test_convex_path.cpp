#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "covplan/bounds.hpp"
#include "covplan/convex_path.hpp"
#include "support/test_oracles.hpp"

using namespace covplan;

namespace {

double objective(Point2 prev, Point2 next, Point2 s) {
  return distance(s, prev) + distance(s, next);
}

// dense 1-D boundary grid + golden refinement, independent of the solver path
double boundary_oracle(Point2 prev, Point2 next, const SensingCircle& disk) {
  double best = std::numeric_limits<double>::infinity();
  double best_phi = 0;
  for (int i = 0; i < 2000; ++i) {
    const double phi = 2.0 * kPi * i / 2000.0;
    const double v = objective(prev, next, disk.center + disk.radius * unit_from_angle(phi));
    if (v < best) {
      best = v;
      best_phi = phi;
    }
  }
  double lo = best_phi - 2.0 * kPi / 2000.0, hi = best_phi + 2.0 * kPi / 2000.0;
  for (int it = 0; it < 200; ++it) {
    const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    const double f1 = objective(prev, next, disk.center + disk.radius * unit_from_angle(m1));
    const double f2 = objective(prev, next, disk.center + disk.radius * unit_from_angle(m2));
    (f1 < f2 ? hi : lo) = (f1 < f2 ? m2 : m1);
  }
  return objective(prev, next, disk.center + disk.radius * unit_from_angle(0.5 * (lo + hi)));
}

}  // namespace

TEST_CASE("solve_node_subproblem on disks") {
  SECTION("symmetric boundary optimum") {
    const Point2 s = solve_node_subproblem({-2, 0}, {2, 0}, SensingCircle{{0, 2}, 1.0});
    CHECK(s.x == Catch::Approx(0.0).margin(1e-6));
    CHECK(s.y == Catch::Approx(1.0).margin(1e-6));
    CHECK(objective({-2, 0}, {2, 0}, s) == Catch::Approx(2.0 * std::sqrt(5.0)).margin(1e-9));
  }
  SECTION("chord midpoint when the segment crosses the disk") {
    const Point2 s = solve_node_subproblem({-2, 0}, {2, 0}, SensingCircle{{0, 0}, 1.0});
    CHECK(s.x == Catch::Approx(0.0).margin(1e-12));
    CHECK(s.y == Catch::Approx(0.0).margin(1e-12));
    CHECK(objective({-2, 0}, {2, 0}, s) == Catch::Approx(4.0));
  }
  SECTION("matches the dense boundary oracle") {
    const SensingCircle disk{{5, 0}, 1.0};
    const Point2 s = solve_node_subproblem({0, 0}, {3, 4}, disk);
    const double oracle = boundary_oracle({0, 0}, {3, 4}, disk);
    CHECK(objective({0, 0}, {3, 4}, s) == Catch::Approx(oracle).margin(1e-6));
  }
  SECTION("random agreement with the boundary oracle") {
    std::mt19937_64 rng(31);
    auto u = [&](double lo, double hi) { return lo + (hi - lo) * (rng() >> 11) * 0x1.0p-53; };
    for (int trial = 0; trial < 200; ++trial) {
      const SensingCircle disk{{u(-1, 1), u(-1, 1)}, u(0.3, 1.5)};
      const Point2 prev{u(-5, 5), u(-5, 5)};
      const Point2 next{u(-5, 5), u(-5, 5)};
      if (distance(prev, next) < 1e-3) continue;
      const Point2 s = solve_node_subproblem(prev, next, disk);
      CHECK(distance(project_to_disk(s, disk), s) < 1e-9);  // feasible
      if (!segment_disk_interval(prev, next, disk)) {
        CHECK(objective(prev, next, s) ==
              Catch::Approx(boundary_oracle(prev, next, disk)).margin(1e-6));
      } else {
        CHECK(objective(prev, next, s) == Catch::Approx(distance(prev, next)).margin(1e-9));
      }
    }
  }
}

TEST_CASE("solve_node_subproblem on segments and fixed points") {
  const Point2 p = solve_node_subproblem({0, 0}, {4, 0}, SegmentRegion{{2, 1}, {2, 5}});
  CHECK(p.x == Catch::Approx(2.0).margin(1e-9));
  CHECK(p.y == Catch::Approx(1.0).margin(1e-6));
  const Point2 q = solve_node_subproblem({0, 0}, {4, 0}, FixedPoint{{7, 7}});
  CHECK(q.x == 7.0);
  CHECK(q.y == 7.0);
}

TEST_CASE("optimize_sequence basic instances") {
  SECTION("two-region straight pull") {
    ViaSequence via;
    via.regions = {FixedPoint{{0, 0}}, SensingCircle{{4, 0}, 1.0}};
    via = optimize_sequence(std::move(via));
    CHECK(via.length == Catch::Approx(3.0).margin(1e-9));
    CHECK(via.positions.back().x == Catch::Approx(3.0).margin(1e-9));
    CHECK(via.positions.back().y == Catch::Approx(0.0).margin(1e-9));
    CHECK(via.converged);
  }
  SECTION("collinear disks keep the line") {
    ViaSequence via;
    via.regions = {FixedPoint{{0, 0}}, SensingCircle{{4, 0}, 1.0}, SensingCircle{{8, 0}, 1.0}};
    via = optimize_sequence(std::move(via));
    CHECK(via.length == Catch::Approx(7.0).margin(1e-9));
    const Point2 mid = via.positions[1];
    CHECK(mid.y == Catch::Approx(0.0).margin(1e-9));
    CHECK(mid.x >= 3.0 - 1e-9);
    CHECK(mid.x <= 5.0 + 1e-9);
  }
  SECTION("worst-case packing for n = 7") {
    const Scenario scn = worst_case_instance(7, 1.0);
    ViaSequence via;
    via.regions.push_back(FixedPoint{scn.targets[0]});
    for (int i = 1; i < 7; ++i) via.regions.push_back(SensingCircle{scn.targets[i], 1.0});
    via = optimize_sequence(std::move(via));
    const double expect = kappa_and_path(7, 1.0).p_odd;
    CHECK(via.length == Catch::Approx(expect).epsilon(0.005));
  }
}

TEST_CASE("optimize_sequence requires a fixed first region") {
  ViaSequence via;
  via.regions = {SensingCircle{{0, 0}, 1.0}, SensingCircle{{4, 0}, 1.0}};
  CHECK_THROWS_AS(optimize_sequence(std::move(via)), std::invalid_argument);
}

TEST_CASE("optimize_sequence feasibility, monotonicity and oracle agreement") {
  std::mt19937_64 rng(37);
  auto u = [&](double lo, double hi) { return lo + (hi - lo) * (rng() >> 11) * 0x1.0p-53; };
  for (int trial = 0; trial < 40; ++trial) {
    ViaSequence via;
    via.regions.push_back(FixedPoint{{u(-1, 1), u(-1, 1)}});
    const int extra = 2 + static_cast<int>(rng() % 3);  // up to 4 more regions
    for (int i = 0; i < extra; ++i) {
      const Point2 c{u(-4, 4), u(-4, 4)};
      if (rng() % 4 == 0)
        via.regions.push_back(SegmentRegion{c, c + Point2{u(0.3, 2), u(-1, 1)}});
      else
        via.regions.push_back(SensingCircle{c, u(0.4, 1.2)});
    }
    const std::vector<ConvexRegion> regions = via.regions;
    via = optimize_sequence(std::move(via));
    CHECK(via.monotone_violations == 0);
    for (std::size_t i = 0; i < regions.size(); ++i)
      CHECK(distance(project_to_region(regions[i], via.positions[i]), via.positions[i]) < 1e-9);
    const double oracle = testsupport::grid_chain_min(regions);
    if (oracle > 0.5) {
      CHECK(via.length <= oracle * (1.0 + 1e-4) + 1e-9);
      CHECK(via.length >= oracle * (1.0 - 1e-4) - 1e-9);
    }
  }
}

TEST_CASE("perturbation stationarity at the solved nodes") {
  ViaSequence via;
  via.regions = {FixedPoint{{0, 0}}, SensingCircle{{3, 1}, 0.8}, SensingCircle{{6, -1}, 0.7},
                 SensingCircle{{8, 2}, 1.0}};
  via = optimize_sequence(std::move(via), 1e-13, 50000);
  for (std::size_t i = 1; i < via.regions.size(); ++i) {
    for (int dir = 0; dir < 16; ++dir) {
      const double ang = 2.0 * kPi * dir / 16.0;
      std::vector<Point2> nudged = via.positions;
      nudged[i] = project_to_region(via.regions[i], nudged[i] + 1e-4 * unit_from_angle(ang));
      CHECK(polyline_length(nudged) >= via.length - 1e-8);
    }
  }
}
