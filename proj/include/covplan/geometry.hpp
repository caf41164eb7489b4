#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace covplan {

inline constexpr double kPi = 3.14159265358979323846;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }
inline bool operator!=(Point2 a, Point2 b) { return !(a == b); }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point2 a) { return a.x * a.x + a.y * a.y; }
inline double norm(Point2 a) { return std::sqrt(norm2(a)); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

inline bool finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

inline Point2 normalized(Point2 a) {
  const double n = norm(a);
  return n > 0.0 ? Point2{a.x / n, a.y / n} : Point2{0.0, 0.0};
}

// 90-degree counterclockwise rotation.
inline Point2 perp(Point2 a) { return {-a.y, a.x}; }

inline Point2 unit_from_angle(double phi) { return {std::cos(phi), std::sin(phi)}; }

struct SensingCircle {
  Point2 center;
  double radius = 0.0;
};

// Circles "overlap" when their interiors intersect; tangency does not count.
inline bool disks_overlap(const SensingCircle& a, const SensingCircle& b) {
  return distance(a.center, b.center) < a.radius + b.radius - 1e-12;
}

struct Polygon {
  std::vector<Point2> vertices;
};

inline double signed_area(const Polygon& poly) {
  double s = 0.0;
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % v.size()];
    s += cross(a, b);
  }
  return 0.5 * s;
}

inline bool is_ccw(const Polygon& poly) { return signed_area(poly) > 0.0; }

inline bool point_on_segment(Point2 p, Point2 a, Point2 b, double tol = 1e-9) {
  const Point2 d = b - a;
  const double len = norm(d);
  if (len == 0.0) return distance(p, a) <= tol;
  if (std::abs(cross(d, p - a)) > tol * std::max(1.0, len)) return false;
  const double t = dot(p - a, d) / (len * len);
  return t >= -tol / len && t <= 1.0 + tol / len;
}

enum class PointLocation { Outside, Boundary, Inside };

inline PointLocation locate_point(const Polygon& poly, Point2 p, double tol = 1e-9) {
  const auto& v = poly.vertices;
  bool inside = false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2 a = v[i];
    const Point2 b = v[(i + 1) % v.size()];
    if (point_on_segment(p, a, b, tol)) return PointLocation::Boundary;
    if ((a.y > p.y) != (b.y > p.y)) {
      const double xint = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < xint) inside = !inside;
    }
  }
  return inside ? PointLocation::Inside : PointLocation::Outside;
}

inline bool strictly_inside(const Polygon& poly, Point2 p, double tol = 1e-9) {
  return locate_point(poly, p, tol) == PointLocation::Inside;
}

// Appends the parameters t on segment pq at which it meets segment uv.
// Collinear overlaps contribute both overlap endpoints.
inline void segment_intersection_params(Point2 p, Point2 q, Point2 u, Point2 v,
                                        std::vector<double>& out) {
  const Point2 d1 = q - p;
  const Point2 d2 = v - u;
  const double denom = cross(d1, d2);
  const double scale = std::max({1.0, norm(d1) * norm(d2)});
  if (std::abs(denom) > 1e-14 * scale) {
    const Point2 w = u - p;
    const double t = cross(w, d2) / denom;
    const double s = cross(w, d1) / denom;
    if (t >= -1e-12 && t <= 1.0 + 1e-12 && s >= -1e-12 && s <= 1.0 + 1e-12) {
      out.push_back(std::clamp(t, 0.0, 1.0));
    }
    return;
  }
  // Parallel: only collinear segments can interact.
  if (std::abs(cross(d1, u - p)) > 1e-12 * scale) return;
  const double len2 = norm2(d1);
  if (len2 == 0.0) return;
  double tu = dot(u - p, d1) / len2;
  double tv = dot(v - p, d1) / len2;
  if (tu > tv) std::swap(tu, tv);
  const double lo = std::max(0.0, tu);
  const double hi = std::min(1.0, tv);
  if (lo <= hi + 1e-12) {
    out.push_back(std::clamp(lo, 0.0, 1.0));
    out.push_back(std::clamp(hi, 0.0, 1.0));
  }
}

// True when the segment passes through the interior of the polygon.
// Touching the boundary or sliding along an edge does not count.
inline bool segment_crosses_interior(Point2 a, Point2 b, const Polygon& poly,
                                     double tol = 1e-9) {
  if (distance(a, b) < 1e-15) return strictly_inside(poly, a, tol);
  std::vector<double> ts{0.0, 1.0};
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    segment_intersection_params(a, b, v[i], v[(i + 1) % v.size()], ts);
  }
  std::sort(ts.begin(), ts.end());
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if (ts[i + 1] - ts[i] < 1e-12) continue;
    const double tm = 0.5 * (ts[i] + ts[i + 1]);
    if (strictly_inside(poly, a + tm * (b - a), tol)) return true;
  }
  return false;
}

inline bool sight_clear(Point2 a, Point2 b, std::span<const Polygon> obstacles,
                        double tol = 1e-9) {
  for (const Polygon& poly : obstacles) {
    if (segment_crosses_interior(a, b, poly, tol)) return false;
  }
  return true;
}

inline bool polygon_is_simple(const Polygon& poly) {
  const auto& v = poly.vertices;
  const std::size_t m = v.size();
  if (m < 3) return false;
  for (std::size_t i = 0; i < m; ++i) {
    if (distance(v[i], v[(i + 1) % m]) < 1e-12) return false;
  }
  for (std::size_t i = 0; i < m; ++i) {
    const Point2 a = v[i], b = v[(i + 1) % m];
    for (std::size_t j = i + 1; j < m; ++j) {
      const Point2 c = v[j], d = v[(j + 1) % m];
      const bool adjacent = (j == i + 1) || (i == 0 && j == m - 1);
      std::vector<double> ts;
      segment_intersection_params(a, b, c, d, ts);
      if (ts.empty()) continue;
      if (!adjacent) return false;
      // Adjacent edges may only share the common vertex.
      for (double t : ts) {
        const Point2 p = a + t * (b - a);
        const Point2 shared = (j == i + 1) ? b : a;
        if (distance(p, shared) > 1e-9) return false;
      }
    }
  }
  return true;
}

inline void validate_polygon(const Polygon& poly) {
  if (poly.vertices.size() < 3)
    throw std::invalid_argument("polygon needs at least 3 vertices");
  for (Point2 p : poly.vertices) {
    if (!finite(p)) throw std::invalid_argument("polygon vertex not finite");
  }
  if (!polygon_is_simple(poly))
    throw std::invalid_argument("polygon is degenerate or self-intersecting");
  if (!is_ccw(poly))
    throw std::invalid_argument("polygon must be counterclockwise");
}

// Vertices with interior angle < pi; shortest paths can only bend around these.
inline std::vector<Point2> convex_vertices(const Polygon& poly) {
  std::vector<Point2> out;
  const auto& v = poly.vertices;
  const std::size_t m = v.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Point2 prev = v[(i + m - 1) % m];
    const Point2 next = v[(i + 1) % m];
    if (cross(v[i] - prev, next - v[i]) > 1e-12) out.push_back(v[i]);
  }
  return out;
}

// Maximal parameter interval of a + t(b - a), t in [0,1], inside the closed
// disk. Near-tangency counts as a degenerate interval.
inline std::optional<std::array<double, 2>> segment_disk_interval(
    Point2 a, Point2 b, const SensingCircle& c) {
  const Point2 d = b - a;
  const double A = norm2(d);
  if (A == 0.0)
    throw std::invalid_argument("segment_disk_interval: degenerate segment");
  const Point2 f = a - c.center;
  const double B = 2.0 * dot(f, d);
  const double C = norm2(f) - c.radius * c.radius;
  double disc = B * B - 4.0 * A * C;
  const double tol = 1e-12 * std::max({1.0, B * B, std::abs(4.0 * A * C)});
  if (disc < -tol) return std::nullopt;
  disc = std::max(disc, 0.0);
  const double sq = std::sqrt(disc);
  double t0 = (-B - sq) / (2.0 * A);
  double t1 = (-B + sq) / (2.0 * A);
  if (t1 < 0.0 || t0 > 1.0) return std::nullopt;
  t0 = std::max(t0, 0.0);
  t1 = std::min(t1, 1.0);
  return std::array<double, 2>{t0, t1};
}

inline Point2 project_to_disk(Point2 p, const SensingCircle& c) {
  const Point2 d = p - c.center;
  const double n = norm(d);
  if (n <= c.radius) return p;
  return c.center + (c.radius / n) * d;
}

inline Point2 closest_point_on_segment(Point2 p, Point2 a, Point2 b) {
  const Point2 d = b - a;
  const double len2 = norm2(d);
  if (len2 == 0.0) return a;
  const double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
  return a + t * d;
}

// ---- polyline helpers ----

inline double polyline_length(std::span<const Point2> path) {
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    len += distance(path[i], path[i + 1]);
  return len;
}

inline std::vector<double> polyline_cumlen(std::span<const Point2> path) {
  std::vector<double> cum(path.size(), 0.0);
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    cum[i + 1] = cum[i] + distance(path[i], path[i + 1]);
  return cum;
}

inline Point2 polyline_point(std::span<const Point2> path, double s) {
  if (path.empty()) throw std::invalid_argument("polyline_point: empty path");
  if (path.size() == 1) return path[0];
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const double seg = distance(path[i], path[i + 1]);
    if (s <= acc + seg || i + 2 == path.size()) {
      if (seg == 0.0) return path[i];
      const double t = std::clamp((s - acc) / seg, 0.0, 1.0);
      return path[i] + t * (path[i + 1] - path[i]);
    }
    acc += seg;
  }
  return path.back();
}

}  // namespace covplan
