#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "covplan/convex_path.hpp"
#include "covplan/hoogeveen.hpp"
#include "covplan/node_reduction.hpp"
#include "covplan/scenario.hpp"

namespace covplan {

namespace detail {

inline bool targets_overlap(const Scenario& scn, int i, int j) {
  return distance(scn.targets[i], scn.targets[j]) < 2.0 * scn.r - 1e-12;
}

// Midpoint of the longest merged component of angular intervals on a circle.
// Intervals are (center angle, half width). Returns false when empty.
inline bool angular_union_midpoint(std::vector<std::array<double, 2>> arcs, double& mid) {
  if (arcs.empty()) return false;
  std::vector<std::array<double, 2>> spans;  // [start, end], end >= start
  for (auto [theta, alpha] : arcs) {
    double s = std::fmod(theta - alpha, 2.0 * kPi);
    if (s < 0.0) s += 2.0 * kPi;
    spans.push_back({s, s + 2.0 * alpha});
  }
  std::sort(spans.begin(), spans.end());
  // Unroll once around to merge across the wrap.
  const std::size_t m = spans.size();
  for (std::size_t i = 0; i < m; ++i)
    spans.push_back({spans[i][0] + 2.0 * kPi, spans[i][1] + 2.0 * kPi});
  std::vector<std::array<double, 2>> merged;
  for (const auto& sp : spans) {
    if (!merged.empty() && sp[0] <= merged.back()[1] + 1e-12)
      merged.back()[1] = std::max(merged.back()[1], sp[1]);
    else
      merged.push_back(sp);
  }
  double best_len = -1.0, best_mid = 0.0;
  for (const auto& sp : merged) {
    if (sp[0] >= 2.0 * kPi) break;  // copies past the first turn
    const double len = std::min(sp[1] - sp[0], 2.0 * kPi);
    if (len > best_len + 1e-12) {
      best_len = len;
      best_mid = 0.5 * (sp[0] + std::min(sp[1], sp[0] + 2.0 * kPi));
    }
  }
  mid = std::fmod(best_mid, 2.0 * kPi);
  return true;
}

}  // namespace detail

// Greedy base set over the sensing circles: isolated circles first, then the
// remaining circles in selection order, each removing its overlap neighbors.
// Returns base indices in selection order. Every non-base circle overlaps the
// first selected base that removed it; base circles have disjoint interiors.
inline std::vector<int> base_set_circles(const Scenario& scn,
                                         std::optional<std::uint64_t> shuffle_seed = {}) {
  const int n = scn.n();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (shuffle_seed) {
    std::mt19937_64 rng(*shuffle_seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  std::vector<char> removed(n, 0);
  std::vector<int> base;
  for (int i = 0; i < n; ++i) {
    bool isolated = true;
    for (int j = 0; j < n && isolated; ++j)
      if (j != i && detail::targets_overlap(scn, i, j)) isolated = false;
    if (isolated) {
      base.push_back(i);
      removed[i] = 1;
    }
  }
  for (int i : order) {
    if (removed[i]) continue;
    base.push_back(i);
    removed[i] = 1;
    for (int j = 0; j < n; ++j)
      if (!removed[j] && detail::targets_overlap(scn, i, j)) removed[j] = 1;
  }
  return base;
}

// Initial sensing nodes from the base set: centers for isolated base circles,
// perimeter points at overlap-arc midpoints otherwise. Every node lies inside
// its own sensing circle.
inline std::vector<Point2> initial_sensing_nodes(const Scenario& scn,
                                                 const std::vector<int>& base_order) {
  const int n = scn.n();
  std::vector<Point2> nodes(n);
  std::vector<char> is_base(n, 0);
  for (int b : base_order) is_base[b] = 1;

  auto owner_of = [&](int j) {
    for (int b : base_order)
      if (detail::targets_overlap(scn, b, j)) return b;
    return -1;
  };

  for (int i = 0; i < n; ++i) {
    if (is_base[i]) {
      std::vector<std::array<double, 2>> arcs;
      for (int j = 0; j < n; ++j) {
        if (j == i || !detail::targets_overlap(scn, i, j)) continue;
        const Point2 d = scn.targets[j] - scn.targets[i];
        const double dist_ij = norm(d);
        if (dist_ij < 1e-12) continue;  // coincident targets: arc undefined
        const double alpha = std::acos(std::clamp(dist_ij / (2.0 * scn.r), -1.0, 1.0));
        arcs.push_back({std::atan2(d.y, d.x), alpha});
      }
      double mid;
      if (detail::angular_union_midpoint(arcs, mid))
        nodes[i] = scn.targets[i] + scn.r * unit_from_angle(mid);
      else
        nodes[i] = scn.targets[i];
    } else {
      const int b = owner_of(i);
      if (b < 0) throw std::logic_error("initial_sensing_nodes: uncovered circle");
      const Point2 d = scn.targets[i] - scn.targets[b];
      if (norm(d) < 1e-12)
        nodes[i] = scn.targets[i];
      else
        nodes[i] = scn.targets[b] + scn.r * normalized(d);
    }
  }
  return nodes;
}

namespace detail {

// Order the nodes, then shrink the path by convex optimization with each
// sensing node free in its own circle and the start pinned to its target.
inline CoveragePlan cover_with_nodes(const Scenario& scn, const std::vector<Point2>& nodes0) {
  const int s = scn.start();
  const int t = scn.end();
  const VisitationOrder ord = hoogeveen_order(std::span<const Point2>(nodes0), s, t);

  ViaSequence via;
  via.regions.reserve(ord.order.size());
  via.positions.reserve(ord.order.size());
  via.regions.push_back(FixedPoint{scn.targets[s]});
  via.positions.push_back(scn.targets[s]);
  for (std::size_t i = 1; i < ord.order.size(); ++i) {
    via.regions.push_back(SensingCircle{scn.targets[ord.order[i]], scn.r});
    via.positions.push_back(nodes0[ord.order[i]]);
  }
  via = optimize_sequence(std::move(via));

  CoveragePlan plan;
  plan.order = ord.order;
  plan.path = via.positions;
  plan.length = via.length;
  plan.nodes = via.positions;
  plan.assignment.assign(scn.n(), -1);
  for (std::size_t i = 0; i < ord.order.size(); ++i)
    plan.assignment[ord.order[i]] = static_cast<int>(i);
  return plan;
}

}  // namespace detail

// One sensing node per target, sensing circles pairwise disjoint. Visitation
// order from the 5/3-approximate s-to-t path through the targets, node
// locations from convex optimization.
inline CoveragePlan shortest_cover(const Scenario& scn) {
  scn.validate();
  for (int i = 0; i < scn.n(); ++i)
    for (int j = i + 1; j < scn.n(); ++j)
      if (detail::targets_overlap(scn, i, j))
        throw std::invalid_argument(
            "shortest_cover: sensing circles overlap; use reduced_sensing_path");
  return detail::cover_with_nodes(scn, scn.targets);
}

// Overlapping circles allowed: base-set initialization, ordering, convex
// optimization, then sensing-node reduction along the optimized path.
inline CoveragePlan reduced_sensing_path(const Scenario& scn) {
  scn.validate();
  const std::vector<int> base = base_set_circles(scn, scn.seed);
  std::vector<Point2> nodes0 = initial_sensing_nodes(scn, base);
  nodes0[scn.start()] = scn.targets[scn.start()];

  CoveragePlan plan = detail::cover_with_nodes(scn, nodes0);

  std::vector<SensingCircle> circles;
  circles.reserve(scn.targets.size());
  for (Point2 t : scn.targets) circles.push_back({t, scn.r});
  const auto intervals =
      overlap_intervals<SensingCircle>(plan.path, std::span<const SensingCircle>(circles));
  const NodeReduction red = reduce_nodes(intervals, plan.path);

  plan.nodes = red.points;
  for (std::size_t i = 0; i < intervals.size(); ++i)
    plan.assignment[intervals[i].region] = red.assignment[i];
  return plan;
}

}  // namespace covplan
