#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "covplan/geometry.hpp"

namespace covplan {

// One piece of a viewing-region boundary: a range-limit arc about the target,
// a piece of an obstacle edge, or a radial occlusion edge.
struct BoundaryElement {
  enum class Kind { Arc, ObstacleEdge, OcclusionEdge };
  Kind kind = Kind::Arc;
  double phi0 = 0.0;  // arc angles (Arc only), phi1 >= phi0
  double phi1 = 0.0;
  Point2 a{};  // element endpoints in CCW traversal order
  Point2 b{};
};

// Star-shaped set of points within range r of the target and with an
// unobstructed line of sight to it.
struct ViewingRegion {
  Point2 target{};
  double radius = 0.0;
  double area = 0.0;
  std::vector<BoundaryElement> boundary;
  std::vector<Polygon> obstacles;
  bool touches_obstacle = false;  // boundary includes an obstacle or occlusion edge

  bool contains(Point2 p, double tol = 1e-9) const {
    if (distance(p, target) > radius + tol) return false;
    return sight_clear(target, p, obstacles, tol);
  }

  // Discretized boundary loop; arcs are sampled at the given chord tolerance.
  std::vector<Point2> boundary_polyline(double chord_tol) const {
    std::vector<Point2> pts;
    auto push = [&](Point2 p) {
      if (pts.empty() || distance(pts.back(), p) > 1e-12) pts.push_back(p);
    };
    for (const BoundaryElement& el : boundary) {
      if (el.kind == BoundaryElement::Kind::Arc) {
        const double span = el.phi1 - el.phi0;
        const double max_step =
            2.0 * std::acos(std::clamp(1.0 - chord_tol / radius, -1.0, 1.0));
        const int steps = std::max(1, static_cast<int>(std::ceil(span / std::max(max_step, 1e-6))));
        for (int k = 0; k <= steps; ++k) {
          const double phi = el.phi0 + span * k / steps;
          push(target + radius * unit_from_angle(phi));
        }
      } else {
        push(el.a);
        push(el.b);
      }
    }
    if (pts.size() > 1 && distance(pts.front(), pts.back()) < 1e-12) pts.pop_back();
    return pts;
  }
};

namespace detail {

// First blocking distance along the ray target + t * u, capped at r.
// Returns 0 when the ray immediately enters an obstacle interior.
inline double ray_reach(Point2 target, Point2 u, double r,
                        std::span<const Polygon> obstacles) {
  const Point2 probe = target + (1e-7 * r) * u;
  for (const Polygon& poly : obstacles) {
    if (strictly_inside(poly, probe, 1e-12)) return 0.0;
  }
  double best = r;
  for (const Polygon& poly : obstacles) {
    const auto& v = poly.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Point2 e0 = v[i];
      const Point2 e1 = v[(i + 1) % v.size()];
      const Point2 de = e1 - e0;
      const double denom = cross(u, de);
      if (std::abs(denom) < 1e-14 * std::max(1.0, norm(de))) continue;
      const double t = cross(e0 - target, de) / denom;
      const double s = cross(e0 - target, u) / denom;
      if (t > 1e-9 * r && s >= -1e-12 && s <= 1.0 + 1e-12) best = std::min(best, t);
    }
  }
  return best;
}

// Ray/line intersection used to place chord endpoints on the blocking edge.
inline double ray_line_param(Point2 target, Point2 u, Point2 e0, Point2 e1) {
  const Point2 de = e1 - e0;
  const double denom = cross(u, de);
  if (std::abs(denom) < 1e-14) return std::numeric_limits<double>::infinity();
  return cross(e0 - target, de) / denom;
}

inline double normalize_angle(double phi) {
  phi = std::fmod(phi, 2.0 * kPi);
  if (phi < 0.0) phi += 2.0 * kPi;
  return phi;
}

}  // namespace detail

// Rotational sweep about the target. Boundary pieces are arcs where the range
// limit binds and edge chords where an obstacle blocks first; radial occlusion
// edges join discontinuities. Area is exact for the arc/segment decomposition.
inline ViewingRegion visibility_region(Point2 target,
                                       std::span<const Polygon> obstacles,
                                       double r) {
  if (!(r > 0.0)) throw std::invalid_argument("visibility_region: radius must be positive");
  if (!finite(target)) throw std::invalid_argument("visibility_region: target not finite");
  for (const Polygon& poly : obstacles) {
    if (strictly_inside(poly, target))
      throw std::invalid_argument("visibility_region: target inside obstacle");
  }

  ViewingRegion region;
  region.target = target;
  region.radius = r;
  region.obstacles.assign(obstacles.begin(), obstacles.end());

  const SensingCircle range{target, r};
  std::vector<double> events;
  for (const Polygon& poly : obstacles) {
    const auto& v = poly.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Point2 a = v[i];
      const Point2 b = v[(i + 1) % v.size()];
      if (distance(a, target) <= r * (1.0 + 1e-9) && distance(a, target) > 1e-12)
        events.push_back(detail::normalize_angle(std::atan2(a.y - target.y, a.x - target.x)));
      if (distance(a, b) > 1e-15) {
        if (auto hit = segment_disk_interval(a, b, range)) {
          for (double t : {(*hit)[0], (*hit)[1]}) {
            const Point2 p = a + t * (b - a);
            if (distance(p, target) > 1e-12)
              events.push_back(detail::normalize_angle(std::atan2(p.y - target.y, p.x - target.x)));
          }
        }
      }
    }
  }
  // Crossings between edges of distinct polygons can swap the nearest blocker.
  for (std::size_t pi = 0; pi < obstacles.size(); ++pi) {
    for (std::size_t pj = pi + 1; pj < obstacles.size(); ++pj) {
      const auto& u = obstacles[pi].vertices;
      const auto& w = obstacles[pj].vertices;
      for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = 0; j < w.size(); ++j) {
          std::vector<double> ts;
          segment_intersection_params(u[i], u[(i + 1) % u.size()], w[j],
                                      w[(j + 1) % w.size()], ts);
          for (double t : ts) {
            const Point2 p = u[i] + t * (u[(i + 1) % u.size()] - u[i]);
            if (distance(p, target) <= r * (1.0 + 1e-9) && distance(p, target) > 1e-12)
              events.push_back(detail::normalize_angle(std::atan2(p.y - target.y, p.x - target.x)));
          }
        }
      }
    }
  }

  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-9; }),
               events.end());
  if (events.size() > 1 && (2.0 * kPi - events.back()) + events.front() < 1e-9)
    events.pop_back();

  if (events.empty()) {
    region.area = kPi * r * r;
    BoundaryElement arc;
    arc.kind = BoundaryElement::Kind::Arc;
    arc.phi0 = 0.0;
    arc.phi1 = 2.0 * kPi;
    arc.a = target + r * unit_from_angle(0.0);
    arc.b = arc.a;
    region.boundary.push_back(arc);
    return region;
  }

  struct Wedge {
    double phi0, phi1;
    bool arc;       // range limit binds
    bool blocked;   // reach is zero
    Point2 a, b;    // boundary endpoints at phi0 / phi1
  };
  std::vector<Wedge> wedges;
  double area = 0.0;

  const std::size_t ne = events.size();
  for (std::size_t k = 0; k < ne; ++k) {
    const double phi0 = events[k];
    const double phi1 = (k + 1 < ne) ? events[k + 1] : events[0] + 2.0 * kPi;
    const double width = phi1 - phi0;
    if (width < 1e-12) continue;
    const double phim = phi0 + 0.5 * width;
    const Point2 um = unit_from_angle(phim);
    const double reach = detail::ray_reach(target, um, r, obstacles);

    Wedge w{phi0, phi1, false, false, {}, {}};
    if (reach >= r * (1.0 - 1e-12)) {
      w.arc = true;
      w.a = target + r * unit_from_angle(phi0);
      w.b = target + r * unit_from_angle(phi1);
      area += 0.5 * r * r * width;
    } else if (reach <= 1e-12 * r) {
      w.blocked = true;
      w.a = target;
      w.b = target;
    } else {
      // Locate the blocking edge at the wedge midpoint.
      double best = std::numeric_limits<double>::infinity();
      Point2 be0{}, be1{};
      for (const Polygon& poly : obstacles) {
        const auto& v = poly.vertices;
        for (std::size_t i = 0; i < v.size(); ++i) {
          const Point2 e0 = v[i];
          const Point2 e1 = v[(i + 1) % v.size()];
          const Point2 de = e1 - e0;
          const double denom = cross(um, de);
          if (std::abs(denom) < 1e-14 * std::max(1.0, norm(de))) continue;
          const double t = cross(e0 - target, de) / denom;
          const double s = cross(e0 - target, um) / denom;
          if (t > 1e-9 * r && s >= -1e-12 && s <= 1.0 + 1e-12 && t < best) {
            best = t;
            be0 = e0;
            be1 = e1;
          }
        }
      }
      const double ta = detail::ray_line_param(target, unit_from_angle(phi0), be0, be1);
      const double tb = detail::ray_line_param(target, unit_from_angle(phi1), be0, be1);
      const double ra = std::isfinite(ta) && ta > 0.0 ? std::min(ta, r) : reach;
      const double rb = std::isfinite(tb) && tb > 0.0 ? std::min(tb, r) : reach;
      w.a = target + ra * unit_from_angle(phi0);
      w.b = target + rb * unit_from_angle(phi1);
      area += 0.5 * std::abs(cross(w.a - target, w.b - target));
    }
    wedges.push_back(w);
  }

  region.area = area;

  // Assemble boundary in sweep order with radial connectors at jumps.
  for (std::size_t k = 0; k < wedges.size(); ++k) {
    const Wedge& w = wedges[k];
    if (w.arc) {
      BoundaryElement el;
      el.kind = BoundaryElement::Kind::Arc;
      el.phi0 = w.phi0;
      el.phi1 = w.phi1;
      el.a = w.a;
      el.b = w.b;
      region.boundary.push_back(el);
    } else if (!w.blocked) {
      BoundaryElement el;
      el.kind = BoundaryElement::Kind::ObstacleEdge;
      el.a = w.a;
      el.b = w.b;
      region.boundary.push_back(el);
      region.touches_obstacle = true;
    }
    const Wedge& nxt = wedges[(k + 1) % wedges.size()];
    if (distance(w.b, nxt.a) > 1e-9 * r) {
      BoundaryElement el;
      el.kind = BoundaryElement::Kind::OcclusionEdge;
      el.a = w.b;
      el.b = nxt.a;
      region.boundary.push_back(el);
      region.touches_obstacle = true;
    }
  }
  return region;
}

// Closed-region disjointness: tangency counts as intersection.
inline bool regions_disjoint(const SensingCircle& a, const SensingCircle& b) {
  return distance(a.center, b.center) > a.radius + b.radius + 1e-12;
}

inline bool regions_disjoint(const ViewingRegion& u, const ViewingRegion& v) {
  const double d = distance(u.target, v.target);
  if (d > u.radius + v.radius + 1e-12) return true;
  if (u.contains(v.target) || v.contains(u.target)) return false;

  const auto pu = u.boundary_polyline(1e-3 * u.radius);
  const auto pv = v.boundary_polyline(1e-3 * v.radius);
  for (Point2 p : pu)
    if (v.contains(p)) return false;
  for (Point2 p : pv)
    if (u.contains(p)) return false;
  std::vector<double> ts;
  for (std::size_t i = 0; i < pu.size(); ++i) {
    const Point2 a = pu[i];
    const Point2 b = pu[(i + 1) % pu.size()];
    for (std::size_t j = 0; j < pv.size(); ++j) {
      ts.clear();
      segment_intersection_params(a, b, pv[j], pv[(j + 1) % pv.size()], ts);
      if (!ts.empty()) return false;
    }
  }

  // Grid sample of the disk-overlap zone with the exact membership predicates.
  const double lox = std::max(u.target.x - u.radius, v.target.x - v.radius);
  const double hix = std::min(u.target.x + u.radius, v.target.x + v.radius);
  const double loy = std::max(u.target.y - u.radius, v.target.y - v.radius);
  const double hiy = std::min(u.target.y + u.radius, v.target.y + v.radius);
  const int steps = 96;
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; j <= steps; ++j) {
      const Point2 p{lox + (hix - lox) * i / steps, loy + (hiy - loy) * j / steps};
      if (u.contains(p) && v.contains(p)) return false;
    }
  }
  return true;
}

}  // namespace covplan
