#include <catch2/catch_amalgamated.hpp>

#include "covplan/instances.hpp"
#include "covplan/obstacle_planner.hpp"
#include "support/test_oracles.hpp"

using namespace covplan;

namespace {

Scenario wall_scene() {
  Scenario scn;
  scn.targets = {{0, 0}, {2, 0}};
  scn.r = 1.0;
  // thin wall with its top corner at (1, 1)
  Polygon wall{{{0.999, -10}, {1.001, -10}, {1.001, 1}, {0.999, 1}}};
  scn.obstacles.push_back(wall);
  return scn;
}

bool point_in_triangle(Point2 p, const std::array<Point2, 3>& tri, double tol) {
  const double d1 = cross(tri[1] - tri[0], p - tri[0]);
  const double d2 = cross(tri[2] - tri[1], p - tri[1]);
  const double d3 = cross(tri[0] - tri[2], p - tri[2]);
  const bool has_neg = (d1 < -tol) || (d2 < -tol) || (d3 < -tol);
  const bool has_pos = (d1 > tol) || (d2 > tol) || (d3 > tol);
  return !(has_neg && has_pos);
}

double dist_to_polyline(Point2 p, const std::vector<Point2>& line) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < line.size(); ++i)
    best = std::min(best, distance(p, closest_point_on_segment(p, line[i], line[i + 1])));
  if (line.size() == 1) best = distance(p, line[0]);
  return best;
}

}  // namespace

TEST_CASE("viewing_regions with an empty obstacle set are full disks") {
  Scenario scn;
  scn.targets = {{0, 0}, {5, 5}, {9, 1}};
  scn.r = 1.3;
  const auto regions = viewing_regions(scn);
  REQUIRE(regions.size() == 3);
  for (const auto& vr : regions) CHECK(vr.area == Catch::Approx(kPi * 1.3 * 1.3).epsilon(1e-9));
}

TEST_CASE("viewing region behind a wall loses area") {
  Scenario scn;
  scn.targets = {{0, 0}, {5, 0}};
  scn.r = 1.0;
  Polygon wall{{{-2, 0.5}, {2, 0.5}, {2, 0.6}, {-2, 0.6}}};
  scn.obstacles.push_back(wall);
  const auto regions = viewing_regions(scn);
  CHECK(regions[0].area < kPi - 0.1);
  CHECK(regions[0].area > 0.0);
  CHECK(regions[1].area == Catch::Approx(kPi).epsilon(1e-9));
}

TEST_CASE("viewing region membership passes the defining predicates") {
  const Scenario scn = random_obstacle_instance(4, 3, 1.2, 555);
  const auto regions = viewing_regions(scn);
  std::mt19937_64 rng(1);
  auto u = [&](double lo, double hi) { return lo + (hi - lo) * (rng() >> 11) * 0x1.0p-53; };
  for (const auto& vr : regions) {
    for (int i = 0; i < 300; ++i) {
      const Point2 p{vr.target.x + u(-1.3, 1.3), vr.target.y + u(-1.3, 1.3)};
      if (std::abs(distance(p, vr.target) - vr.radius) < 1e-6) continue;
      const bool direct = distance(p, vr.target) <= vr.radius &&
                          sight_clear(vr.target, p, scn.obstacles);
      CHECK(vr.contains(p) == direct);
    }
  }
}

TEST_CASE("visibility_metric without obstacles is Euclidean") {
  const std::vector<Point2> nodes{{0, 0}, {3, 4}};
  const VisibilityGraph vg = visibility_metric(nodes, {});
  CHECK(vg.length(0, 1) == Catch::Approx(5.0));
  const auto line = vg.polyline(0, 1);
  REQUIRE(line.size() == 2);
  CHECK(distance(line[0], {0, 0}) < 1e-12);
  CHECK(distance(line[1], {3, 4}) < 1e-12);
}

TEST_CASE("visibility_metric detours around a wall endpoint") {
  const Scenario scn = wall_scene();
  const std::vector<Point2> nodes{{0, 0}, {2, 0}};
  const VisibilityGraph vg = visibility_metric(nodes, scn.obstacles);
  CHECK(vg.length(0, 1) == Catch::Approx(2.0 * std::sqrt(2.0)).margin(5e-3));
  const auto line = vg.polyline(0, 1);
  REQUIRE(line.size() >= 3);
  CHECK(distance(line[1], {1, 1}) < 5e-3);  // bends at the wall top
}

TEST_CASE("visibility_metric rejects nodes inside obstacles") {
  Polygon square{{{0, 0}, {2, 0}, {2, 2}, {0, 2}}};
  const std::vector<Point2> nodes{{1, 1}, {5, 5}};
  CHECK_THROWS_AS(visibility_metric(nodes, std::vector<Polygon>{square}),
                  std::invalid_argument);
}

TEST_CASE("visibility_metric agrees with the smoothed grid oracle") {
  for (int trial = 0; trial < 6; ++trial) {
    const Scenario scn = random_obstacle_instance(4, 3, 1.0, 2200 + trial);
    const VisibilityGraph vg = visibility_metric(scn.targets, scn.obstacles);
    for (int i = 0; i < scn.n(); ++i) {
      for (int j = i + 1; j < scn.n(); ++j) {
        const double grid =
            testsupport::grid_shortest_path(scn.targets[i], scn.targets[j], scn.obstacles, 0.05);
        if (!std::isfinite(grid)) continue;
        CHECK(vg.length(i, j) <= grid + 1e-9);          // grid paths are feasible
        CHECK(grid <= vg.length(i, j) * 1.02 + 0.06);   // and nearly tight
      }
    }
  }
}

TEST_CASE("build_corridors on a plain two-node leg") {
  Scenario scn;
  scn.targets = {{0, 0}, {6, 0}};
  scn.r = 1.0;
  const auto regions = viewing_regions(scn);
  const std::vector<Point2> nodes{{0, 0}, {5, 0}};
  const VisibilityGraph vg = visibility_metric(nodes, scn.obstacles);
  VisitationOrder ord;
  ord.order = {0, 1};
  ord.length = vg.length(0, 1);
  const auto corridors = build_corridors(scn, ord, nodes, vg, regions);
  REQUIRE(corridors.size() == 1);
  CHECK(corridors[0].crossed_edges.size() >= 2);
  CHECK(corridors[0].triangles.size() >= 1);
  // start station is the fixed start point
  CHECK(distance(corridors[0].crossed_edges.front()[0], {0, 0}) < 1e-9);
  CHECK(distance(corridors[0].crossed_edges.front()[1], {0, 0}) < 1e-9);
}

TEST_CASE("corridors contain their shortest-path spines") {
  for (int trial = 0; trial < 5; ++trial) {
    const Scenario scn = random_obstacle_instance(5, 3, 1.2, 8600 + trial);
    const ObstaclePlan op = plan_with_obstacles(scn);
    for (const Corridor& c : op.corridors) {
      REQUIRE_FALSE(c.spine.empty());
      const double spine_len = polyline_length(c.spine);
      for (int k = 0; k <= 200; ++k) {
        const Point2 p = polyline_point(c.spine, spine_len * k / 200.0);
        bool inside = dist_to_polyline(p, c.spine) < 1e-7;
        for (const auto& tri : c.triangles) {
          if (inside) break;
          inside = point_in_triangle(p, tri, 1e-9);
        }
        CHECK(inside);
      }
    }
  }
}

TEST_CASE("plan_with_obstacles without obstacles matches the free planner") {
  for (int trial = 0; trial < 5; ++trial) {
    const Scenario scn = random_overlapping_instance(5, 1.0, 12000 + trial);
    const ObstaclePlan op = plan_with_obstacles(scn);
    const CoveragePlan free = reduced_sensing_path(scn);
    CHECK(op.plan.length == Catch::Approx(free.length).margin(1e-6));
    CHECK(op.plan.nodes.size() == free.nodes.size());
    CHECK(op.optimized_length <= op.hoogeveen_length + 1e-9);
  }
}

TEST_CASE("plan_with_obstacles end-to-end on a seven-target scene") {
  Scenario scn;
  scn.r = 2.2;
  scn.targets = {{0.5, 0.5}, {3.5, 0.7}, {6.5, 0.5}, {8.5, 2.5},
                 {6.5, 5.5}, {3.5, 5.3}, {0.5, 5.5}};
  scn.obstacles.push_back(Polygon{{{2.0, 1.8}, {3.0, 1.8}, {3.0, 4.2}, {2.0, 4.2}}});
  scn.obstacles.push_back(Polygon{{{4.8, 1.8}, {5.8, 1.8}, {5.8, 4.2}, {4.8, 4.2}}});
  scn.obstacles.push_back(Polygon{{{6.9, 1.2}, {7.6, 1.2}, {7.6, 2.0}, {6.9, 2.0}}});
  const ObstaclePlan op = plan_with_obstacles(scn);

  // collision freedom (exact segment tests)
  for (std::size_t i = 0; i + 1 < op.plan.path.size(); ++i)
    CHECK(sight_clear(op.plan.path[i], op.plan.path[i + 1], scn.obstacles));
  // all targets observed along direct lines of sight within range
  for (int i = 0; i < scn.n(); ++i) {
    const Point2 node = op.plan.nodes[op.plan.assignment[i]];
    CHECK(distance(node, scn.targets[i]) <= scn.r + 1e-6);
    CHECK(sight_clear(node, scn.targets[i], scn.obstacles));
  }
  // multi-target views reduce the node count
  CHECK(op.plan.nodes.size() < static_cast<std::size_t>(scn.n()));
  CHECK(op.optimized_length <= op.hoogeveen_length + 1e-9);
  CHECK(distance(op.plan.path.front(), scn.targets[0]) < 1e-9);
}

TEST_CASE("plan_with_obstacles random scenes basic contracts") {
  for (int trial = 0; trial < 8; ++trial) {
    const Scenario scn = random_obstacle_instance(4 + trial % 3, 3, 1.3, 50000 + trial);
    const ObstaclePlan op = plan_with_obstacles(scn);
    for (std::size_t i = 0; i + 1 < op.plan.path.size(); ++i)
      CHECK(sight_clear(op.plan.path[i], op.plan.path[i + 1], scn.obstacles));
    for (int i = 0; i < scn.n(); ++i) {
      const Point2 node = op.plan.nodes[op.plan.assignment[i]];
      CHECK(distance(node, scn.targets[i]) <= scn.r + 1e-6);
      CHECK(sight_clear(node, scn.targets[i], scn.obstacles));
    }
    CHECK(op.optimized_length <= op.hoogeveen_length + 1e-9);
    // base-set postconditions over the viewing regions
    std::vector<char> is_base(scn.n(), 0);
    for (int b : op.base) is_base[b] = 1;
    for (std::size_t i = 0; i < op.base.size(); ++i)
      for (std::size_t j = i + 1; j < op.base.size(); ++j)
        CHECK(regions_disjoint(op.regions[op.base[i]], op.regions[op.base[j]]));
    for (int k = 0; k < scn.n(); ++k) {
      if (is_base[k]) continue;
      bool covered = false;
      for (int b : op.base)
        if (!regions_disjoint(op.regions[k], op.regions[b])) covered = true;
      CHECK(covered);
    }
  }
}
