#pragma once

#include <algorithm>
#include <array>
#include <span>
#include <stdexcept>
#include <vector>

#include "covplan/geometry.hpp"
#include "covplan/visibility.hpp"

namespace covplan {

// Arclength interval of a path during which one region is observable.
struct OverlapInterval {
  int region = 0;  // target index
  double a = 0.0;  // entry arclength
  double b = 0.0;  // exit arclength, a <= b
};

namespace detail {

inline void merge_subintervals(std::vector<std::array<double, 2>>& sub, double tol) {
  if (sub.empty()) return;
  std::sort(sub.begin(), sub.end());
  std::vector<std::array<double, 2>> merged{sub.front()};
  for (std::size_t i = 1; i < sub.size(); ++i) {
    if (sub[i][0] <= merged.back()[1] + tol)
      merged.back()[1] = std::max(merged.back()[1], sub[i][1]);
    else
      merged.push_back(sub[i]);
  }
  sub = std::move(merged);
}

}  // namespace detail

// Maximal arclength sub-intervals of the path inside the closed disk.
// Polyline vertices are membership-tested directly so that a node sitting on
// the circle boundary (up to rounding) still registers a grazing contact.
inline std::vector<std::array<double, 2>> path_region_subintervals(
    std::span<const Point2> path, const SensingCircle& circle) {
  std::vector<std::array<double, 2>> sub;
  const std::vector<double> cum = polyline_cumlen(path);
  const double vtol = 1e-9 * std::max(1.0, circle.radius);
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (distance(path[i], circle.center) <= circle.radius + vtol)
      sub.push_back({cum[i], cum[i]});
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const double seg = distance(path[i], path[i + 1]);
    if (seg < 1e-15) continue;
    if (auto hit = segment_disk_interval(path[i], path[i + 1], circle))
      sub.push_back({cum[i] + (*hit)[0] * seg, cum[i] + (*hit)[1] * seg});
  }
  detail::merge_subintervals(sub, 1e-9);
  return sub;
}

// Same for a viewing region among obstacles. Membership along a segment can
// only change where the segment crosses the range circle, an obstacle edge, or
// the shadow line through the target and an obstacle vertex, so membership is
// decided on the pieces between those candidate parameters.
inline std::vector<std::array<double, 2>> path_region_subintervals(
    std::span<const Point2> path, const ViewingRegion& region) {
  std::vector<std::array<double, 2>> sub;
  const std::vector<double> cum = polyline_cumlen(path);
  const SensingCircle range{region.target, region.radius};
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (region.contains(path[i])) sub.push_back({cum[i], cum[i]});
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const Point2 a = path[i];
    const Point2 b = path[i + 1];
    const double seg = distance(a, b);
    if (seg < 1e-15) continue;
    auto hit = segment_disk_interval(a, b, range);
    if (!hit) continue;
    std::vector<double> ts{(*hit)[0], (*hit)[1]};
    for (const Polygon& poly : region.obstacles) {
      const auto& v = poly.vertices;
      for (std::size_t j = 0; j < v.size(); ++j) {
        segment_intersection_params(a, b, v[j], v[(j + 1) % v.size()], ts);
        // shadow line through the target and this vertex
        const Point2 dir = v[j] - region.target;
        if (norm(dir) > 1e-12) {
          const Point2 far = region.target + (10.0 * (region.radius / norm(dir)) + 2.0) * dir;
          segment_intersection_params(a, b, region.target, far, ts);
        }
      }
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::remove_if(ts.begin(), ts.end(),
                            [&](double t) { return t < (*hit)[0] - 1e-12 || t > (*hit)[1] + 1e-12; }),
             ts.end());
    for (std::size_t j = 0; j + 1 < ts.size(); ++j) {
      const double t0 = ts[j], t1 = ts[j + 1];
      if (t1 - t0 < 1e-12) continue;
      if (region.contains(a + (0.5 * (t0 + t1)) * (b - a)))
        sub.push_back({cum[i] + t0 * seg, cum[i] + t1 * seg});
    }
    if ((*hit)[1] - (*hit)[0] < 1e-12 && region.contains(a + (*hit)[0] * (b - a)))
      sub.push_back({cum[i] + (*hit)[0] * seg, cum[i] + (*hit)[1] * seg});
  }
  detail::merge_subintervals(sub, 1e-9);
  return sub;
}

// One interval per region: the earliest maximal sub-interval along the path.
// A region disjoint from the path indicates an upstream bug.
template <class Region>
std::vector<OverlapInterval> overlap_intervals(std::span<const Point2> path,
                                               std::span<const Region> regions) {
  std::vector<OverlapInterval> out;
  out.reserve(regions.size());
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const auto sub = path_region_subintervals(path, regions[i]);
    if (sub.empty())
      throw std::logic_error("overlap_intervals: region disjoint from path");
    out.push_back({static_cast<int>(i), sub.front()[0], sub.front()[1]});
  }
  return out;
}

struct NodeReduction {
  std::vector<double> arclengths;  // ascending
  std::vector<Point2> points;
  std::vector<int> assignment;  // input interval index -> index into arclengths
};

// Reverse greedy scan: walk back from the path end, place a node at the latest
// uncovered interval start, discard everything it covers, repeat. Greedy by
// latest start is an optimal interval stabbing.
inline NodeReduction reduce_nodes(std::span<const OverlapInterval> intervals,
                                  std::span<const Point2> path) {
  if (intervals.empty()) throw std::invalid_argument("reduce_nodes: no intervals");
  const std::size_t k = intervals.size();
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    return intervals[i].a < intervals[j].a;
  });

  NodeReduction out;
  out.assignment.assign(k, -1);
  std::vector<char> covered(k, 0);
  std::vector<double> selected;  // descending as found
  for (std::size_t pos = k; pos-- > 0;) {
    const std::size_t i = idx[pos];
    if (covered[i]) continue;
    const double s = intervals[i].a;
    selected.push_back(s);
    const int node = static_cast<int>(selected.size()) - 1;
    for (std::size_t j = 0; j < k; ++j) {
      if (!covered[j] && intervals[j].a <= s + 1e-9 && s <= intervals[j].b + 1e-9) {
        covered[j] = 1;
        out.assignment[j] = node;
      }
    }
  }
  // Re-map to ascending arclength order.
  std::vector<int> rank(selected.size());
  std::vector<double> asc = selected;
  std::sort(asc.begin(), asc.end());
  for (std::size_t i = 0; i < selected.size(); ++i) {
    rank[i] = static_cast<int>(
        std::lower_bound(asc.begin(), asc.end(), selected[i]) - asc.begin());
  }
  for (int& a : out.assignment) a = rank[a];
  out.arclengths = std::move(asc);
  out.points.reserve(out.arclengths.size());
  for (double s : out.arclengths) out.points.push_back(polyline_point(path, s));
  return out;
}

}  // namespace covplan
