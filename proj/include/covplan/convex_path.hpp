#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <variant>
#include <vector>

#include "covplan/geometry.hpp"

namespace covplan {

struct FixedPoint {
  Point2 point;
};

struct SegmentRegion {
  Point2 a;
  Point2 b;
};

using ConvexRegion = std::variant<FixedPoint, SensingCircle, SegmentRegion>;

inline Point2 region_seed(const ConvexRegion& region) {
  if (const auto* fp = std::get_if<FixedPoint>(&region)) return fp->point;
  if (const auto* disk = std::get_if<SensingCircle>(&region)) return disk->center;
  const auto& seg = std::get<SegmentRegion>(region);
  return 0.5 * (seg.a + seg.b);
}

inline Point2 project_to_region(const ConvexRegion& region, Point2 p) {
  if (const auto* fp = std::get_if<FixedPoint>(&region)) return fp->point;
  if (const auto* disk = std::get_if<SensingCircle>(&region)) return project_to_disk(p, *disk);
  const auto& seg = std::get<SegmentRegion>(region);
  return closest_point_on_segment(p, seg.a, seg.b);
}

inline bool region_contains(const ConvexRegion& region, Point2 p, double tol = 1e-9) {
  return distance(project_to_region(region, p), p) <= tol;
}

namespace detail {

// Golden-section minimization of f over [lo, hi].
template <class F>
double golden_min(F f, double lo, double hi, double tol) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace detail

// argmin over the region of |S - prev| + |S - next|. For a disk crossed by the
// connecting segment the chord midpoint is returned (the objective is flat
// along the chord); otherwise the minimum lies on the boundary circle and is
// located by a coarse angular scan refined per sampled basin.
inline Point2 solve_node_subproblem(Point2 prev, Point2 next, const ConvexRegion& region) {
  if (const auto* fp = std::get_if<FixedPoint>(&region)) return fp->point;

  if (const auto* seg = std::get_if<SegmentRegion>(&region)) {
    const Point2 a = seg->a;
    const Point2 d = seg->b - seg->a;
    if (norm(d) < 1e-15) return a;
    auto f = [&](double t) {
      const Point2 p = a + t * d;
      return distance(p, prev) + distance(p, next);
    };
    const double t = detail::golden_min(f, 0.0, 1.0, 1e-13);
    return a + t * d;
  }

  const auto& disk = std::get<SensingCircle>(region);
  if (distance(prev, next) < 1e-15) return project_to_disk(prev, disk);
  if (auto hit = segment_disk_interval(prev, next, disk)) {
    const double tm = 0.5 * ((*hit)[0] + (*hit)[1]);
    return prev + tm * (next - prev);
  }
  auto f = [&](double phi) {
    const Point2 p = disk.center + disk.radius * unit_from_angle(phi);
    return distance(p, prev) + distance(p, next);
  };
  constexpr int K = 48;
  std::array<double, K> val;
  for (int i = 0; i < K; ++i) val[i] = f(2.0 * kPi * i / K);
  double best_phi = 0.0;
  double best_val = std::numeric_limits<double>::infinity();
  const double step = 2.0 * kPi / K;
  for (int i = 0; i < K; ++i) {
    const double vm = val[(i + K - 1) % K];
    const double vp = val[(i + 1) % K];
    if (val[i] <= vm && val[i] <= vp) {  // sampled local minimum
      const double lo = step * (i - 1);
      const double hi = step * (i + 1);
      const double phi = detail::golden_min(f, lo, hi, 1e-12);
      const double v = f(phi);
      if (v < best_val) {
        best_val = v;
        best_phi = phi;
      }
    }
  }
  return disk.center + disk.radius * unit_from_angle(best_phi);
}

// Sum-of-norms path through one convex region per via point.
struct ViaSequence {
  std::vector<ConvexRegion> regions;
  std::vector<Point2> positions;  // optional warm start; filled by the solver
  double length = std::numeric_limits<double>::quiet_NaN();
  int sweeps = 0;
  double residual = std::numeric_limits<double>::quiet_NaN();
  bool converged = false;
  int monotone_violations = 0;
};

// Coordinate descent with exact per-node subproblems. The objective is convex,
// each accepted update is an improvement, so the sweep lengths are monotone
// non-increasing.
inline ViaSequence optimize_sequence(ViaSequence seq, double rel_tol = 1e-10,
                                     int max_sweeps = 10000) {
  const std::size_t k = seq.regions.size();
  if (k == 0) throw std::invalid_argument("optimize_sequence: empty sequence");
  if (!std::holds_alternative<FixedPoint>(seq.regions.front()))
    throw std::invalid_argument("optimize_sequence: first region must be a fixed point");

  if (seq.positions.empty()) {
    seq.positions.reserve(k);
    for (const ConvexRegion& r : seq.regions) seq.positions.push_back(region_seed(r));
  } else if (seq.positions.size() != k) {
    throw std::invalid_argument("optimize_sequence: positions/regions size mismatch");
  }
  for (std::size_t i = 0; i < k; ++i)
    seq.positions[i] = project_to_region(seq.regions[i], seq.positions[i]);

  auto total = [&]() { return polyline_length(seq.positions); };
  auto update = [&](std::size_t i) {
    const Point2 prev = seq.positions[i - 1];
    Point2 cand;
    double old_local, new_local;
    if (i + 1 < k) {
      const Point2 next = seq.positions[i + 1];
      cand = solve_node_subproblem(prev, next, seq.regions[i]);
      old_local = distance(seq.positions[i], prev) + distance(seq.positions[i], next);
      new_local = distance(cand, prev) + distance(cand, next);
    } else {
      cand = project_to_region(seq.regions[i], prev);
      old_local = distance(seq.positions[i], prev);
      new_local = distance(cand, prev);
    }
    if (new_local < old_local) seq.positions[i] = cand;
  };
  double len = total();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    for (std::size_t i = 1; i < k; ++i) update(i);
    for (std::size_t i = k; i-- > 1;) update(i);
    const double new_len = total();
    ++seq.sweeps;
    if (new_len > len + 1e-9 * std::max(1.0, len)) ++seq.monotone_violations;
    const double improvement = len - new_len;
    len = new_len;
    seq.residual = improvement / std::max(len, 1e-300);
    if (improvement <= rel_tol * std::max(len, 1e-30)) {
      seq.converged = true;
      break;
    }
  }
  seq.length = len;
  return seq;
}

}  // namespace covplan
