#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "covplan/node_reduction.hpp"
#include "covplan/obstacle_planner.hpp"
#include "covplan/scenario.hpp"

namespace covplan {

namespace detail {

inline double next_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * next_double(rng);
}

}  // namespace detail

// Targets with pairwise distance >= 2.05 r (strictly disjoint circles).
inline Scenario random_disjoint_instance(int n, double r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double side = 3.5 * r * std::sqrt(static_cast<double>(n)) + 4.0 * r;
  Scenario scn;
  scn.r = r;
  for (int attempt = 0; attempt < 100000 && scn.n() < n; ++attempt) {
    const Point2 p{detail::uniform(rng, 0.0, side), detail::uniform(rng, 0.0, side)};
    bool ok = true;
    for (Point2 q : scn.targets)
      if (distance(p, q) < 2.05 * r) ok = false;
    if (ok) scn.targets.push_back(p);
  }
  if (scn.n() < n) throw std::logic_error("random_disjoint_instance: placement failed");
  scn.start_index = 0;
  scn.end_index = n - 1;
  return scn;
}

// Clustered targets with overlapping sensing circles.
inline Scenario random_overlapping_instance(int n, double r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double side = 6.0 * r;
  const int clusters = std::max(1, n / 3);
  std::vector<Point2> centers;
  for (int c = 0; c < clusters; ++c)
    centers.push_back({detail::uniform(rng, 0.0, side), detail::uniform(rng, 0.0, side)});
  Scenario scn;
  scn.r = r;
  for (int attempt = 0; attempt < 100000 && scn.n() < n; ++attempt) {
    const Point2 c = centers[rng() % centers.size()];
    const double ang = detail::uniform(rng, 0.0, 2.0 * kPi);
    const double rad = detail::uniform(rng, 0.0, 1.5 * r);
    const Point2 p = c + rad * unit_from_angle(ang);
    bool ok = true;
    for (Point2 q : scn.targets)
      if (distance(p, q) < 1e-3 * r) ok = false;
    if (ok) scn.targets.push_back(p);
  }
  if (scn.n() < n) throw std::logic_error("random_overlapping_instance: placement failed");
  scn.start_index = 0;
  scn.end_index = n - 1;
  return scn;
}

// Targets among random axis-aligned rectangular obstacles, rejected until the
// viewing regions are usable and the targets are mutually reachable.
inline Scenario random_obstacle_instance(int n, int max_obstacles, double r,
                                         std::uint64_t seed) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::mt19937_64 rng(seed + 7919ull * static_cast<std::uint64_t>(attempt));
    Scenario scn;
    scn.r = r;
    const double side = 10.0;
    const int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_obstacles));
    for (int o = 0; o < k; ++o) {
      const double w = detail::uniform(rng, 0.8, 2.5);
      const double h = detail::uniform(rng, 0.8, 2.5);
      const double x = detail::uniform(rng, 0.5, side - 0.5 - w);
      const double y = detail::uniform(rng, 0.5, side - 0.5 - h);
      Polygon rect;
      rect.vertices = {{x, y}, {x + w, y}, {x + w, y + h}, {x, y + h}};
      scn.obstacles.push_back(rect);
    }
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      bool placed = false;
      for (int tries = 0; tries < 4000 && !placed; ++tries) {
        const Point2 p{detail::uniform(rng, 0.2, side - 0.2),
                       detail::uniform(rng, 0.2, side - 0.2)};
        bool good = true;
        for (const Polygon& obs : scn.obstacles) {
          if (locate_point(obs, p, 0.15) != PointLocation::Outside) good = false;
        }
        for (Point2 q : scn.targets)
          if (distance(p, q) < 0.3) good = false;
        if (good) {
          scn.targets.push_back(p);
          placed = true;
        }
      }
      if (!placed) ok = false;
    }
    if (!ok || scn.n() < n) continue;
    scn.start_index = 0;
    scn.end_index = n - 1;
    try {
      const auto regions = viewing_regions(scn);
      for (const auto& vr : regions)
        if (vr.area < 0.05 * r * r) throw std::invalid_argument("thin region");
      const VisibilityGraph vg = visibility_metric(scn.targets, scn.obstacles);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (!std::isfinite(vg.length(i, j)))
            throw std::invalid_argument("disconnected");
    } catch (const std::invalid_argument&) {
      continue;
    }
    return scn;
  }
  throw std::logic_error("random_obstacle_instance: could not build a valid scene");
}

inline std::vector<OverlapInterval> random_intervals(int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<OverlapInterval> out;
  for (int i = 0; i < k; ++i) {
    const double a = detail::uniform(rng, 0.0, 10.0);
    const double len = detail::uniform(rng, 0.2, 3.0);
    out.push_back({i, a, a + len});
  }
  return out;
}

}  // namespace covplan
