#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

#include "covplan/convex_path.hpp"
#include "covplan/free_planner.hpp"
#include "covplan/hoogeveen.hpp"
#include "covplan/node_reduction.hpp"
#include "covplan/scenario.hpp"
#include "covplan/visibility.hpp"

namespace covplan {

// One viewing region per target; targets wedged flush against obstacles (zero
// visible area) are rejected.
inline std::vector<ViewingRegion> viewing_regions(const Scenario& scn) {
  scn.validate();
  std::vector<ViewingRegion> out;
  out.reserve(scn.targets.size());
  for (Point2 t : scn.targets) {
    ViewingRegion vr = visibility_region(t, scn.obstacles, scn.r);
    if (vr.area <= 1e-9 * scn.r * scn.r)
      throw std::invalid_argument("viewing_regions: target has no visible area");
    out.push_back(std::move(vr));
  }
  return out;
}

// Shortest collision-free paths between sensing nodes via the visibility graph
// over the nodes and the convex obstacle vertices.
struct VisibilityGraph {
  std::vector<Point2> points;  // sensing nodes first, then obstacle vertices
  int num_sensing = 0;
  std::vector<Polygon> obstacles;
  std::vector<std::vector<double>> dist;  // [sensing node][graph node]
  std::vector<std::vector<int>> parent;

  double length(int i, int j) const { return dist[i][j]; }

  std::vector<Point2> polyline(int i, int j) const {
    std::vector<int> chain;
    int v = j;
    while (v != -1) {
      chain.push_back(v);
      if (v == i) break;
      v = parent[i][v];
    }
    if (chain.empty() || chain.back() != i)
      throw std::logic_error("visibility graph: no path recorded");
    std::reverse(chain.begin(), chain.end());
    std::vector<Point2> out;
    out.reserve(chain.size());
    for (int c : chain) {
      if (out.empty() || distance(out.back(), points[c]) > 1e-12)
        out.push_back(points[c]);
    }
    if (out.size() == 1) out.push_back(out.front());
    return out;
  }
};

inline VisibilityGraph visibility_metric(std::span<const Point2> nodes,
                                         std::span<const Polygon> obstacles) {
  VisibilityGraph vg;
  vg.num_sensing = static_cast<int>(nodes.size());
  vg.points.assign(nodes.begin(), nodes.end());
  vg.obstacles.assign(obstacles.begin(), obstacles.end());
  for (Point2 p : nodes) {
    for (const Polygon& poly : obstacles) {
      if (strictly_inside(poly, p))
        throw std::invalid_argument("visibility_metric: node inside obstacle");
    }
  }
  for (const Polygon& poly : obstacles) {
    for (Point2 v : convex_vertices(poly)) vg.points.push_back(v);
  }

  const int V = static_cast<int>(vg.points.size());
  std::vector<std::vector<std::pair<int, double>>> adj(V);
  for (int i = 0; i < V; ++i) {
    for (int j = i + 1; j < V; ++j) {
      if (!sight_clear(vg.points[i], vg.points[j], obstacles)) continue;
      const double d = distance(vg.points[i], vg.points[j]);
      adj[i].emplace_back(j, d);
      adj[j].emplace_back(i, d);
    }
  }

  const double inf = std::numeric_limits<double>::infinity();
  vg.dist.assign(vg.num_sensing, std::vector<double>(V, inf));
  vg.parent.assign(vg.num_sensing, std::vector<int>(V, -1));
  for (int src = 0; src < vg.num_sensing; ++src) {
    auto& dist = vg.dist[src];
    auto& par = vg.parent[src];
    dist[src] = 0.0;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.emplace(0.0, src);
    while (!pq.empty()) {
      const auto [d, u] = pq.top();
      pq.pop();
      if (d > dist[u] + 1e-15) continue;
      for (const auto& [v, w] : adj[u]) {
        if (dist[u] + w < dist[v] - 1e-15) {
          dist[v] = dist[u] + w;
          par[v] = u;
          pq.emplace(dist[v], v);
        }
      }
    }
  }
  return vg;
}

// Corridor around one leg of the visitation order: the shortest-path spine,
// the crossed constraint segments the via points slide on, and an obstacle-
// free triangle cover of the space between consecutive segments.
struct Corridor {
  std::vector<Point2> spine;
  std::vector<std::array<Point2, 2>> crossed_edges;
  std::vector<std::array<Point2, 3>> triangles;
};

namespace detail {

struct Station {
  Point2 anchor{};
  Point2 a{}, b{};  // a == b == anchor when degenerate
  bool node_station = false;
  double width() const { return distance(a, b); }
};

inline double first_hit_along(Point2 origin, Point2 dir, double cap,
                              std::span<const Polygon> obstacles) {
  return ray_reach(origin, dir, cap, obstacles);
}

// Largest extent e <= cap such that every point of [anchor, anchor + e*dir]
// lies in the viewing region; marches outward and bisects the first exit.
inline double region_extent(Point2 anchor, Point2 dir, double cap,
                            const ViewingRegion& region) {
  if (cap <= 0.0) return 0.0;
  const int steps = 64;
  double good = 0.0;
  double bad = -1.0;
  for (int i = 1; i <= steps; ++i) {
    const double e = cap * i / steps;
    if (region.contains(anchor + e * dir))
      good = e;
    else {
      bad = e;
      break;
    }
  }
  if (bad < 0.0) return good;
  for (int it = 0; it < 50; ++it) {
    const double mid = 0.5 * (good + bad);
    if (region.contains(anchor + mid * dir))
      good = mid;
    else
      bad = mid;
  }
  return good;
}

inline std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](Point2 p, Point2 q) {
    return p.x < q.x || (p.x == q.x && p.y < q.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](Point2 p, Point2 q) { return distance(p, q) < 1e-12; }),
            pts.end());
  if (pts.size() <= 2) return pts;
  std::vector<Point2> hull;
  auto build = [&](auto begin, auto end) {
    const std::size_t base = hull.size();
    for (auto it = begin; it != end; ++it) {
      while (hull.size() >= base + 2 &&
             cross(hull.back() - hull[hull.size() - 2], *it - hull.back()) <= 1e-14)
        hull.pop_back();
      hull.push_back(*it);
    }
    hull.pop_back();
  };
  build(pts.begin(), pts.end());
  build(pts.rbegin(), pts.rend());
  return hull;
}

inline bool pair_safe(const Station& s1, const Station& s2,
                      std::span<const Polygon> obstacles) {
  if (s1.width() > 1e-12 && s2.width() > 1e-12) {
    std::vector<double> ts;
    segment_intersection_params(s1.a, s1.b, s2.a, s2.b, ts);
    if (!ts.empty()) return false;  // crossing stations make a bowtie
  }
  std::vector<Point2> hull = convex_hull({s1.a, s1.b, s2.a, s2.b});
  if (hull.size() <= 2) {
    const Point2 p = hull.empty() ? s1.anchor : hull.front();
    const Point2 q = hull.size() < 2 ? s2.anchor : hull.back();
    return sight_clear(p, q, obstacles);
  }
  Polygon poly{hull};
  for (std::size_t i = 0; i < hull.size(); ++i) {
    for (const Polygon& obs : obstacles) {
      if (segment_crosses_interior(hull[i], hull[(i + 1) % hull.size()], obs))
        return false;
    }
  }
  for (const Polygon& obs : obstacles) {
    for (Point2 v : obs.vertices) {
      if (strictly_inside(poly, v)) return false;
    }
  }
  return true;
}

inline void shrink_station(Station& st, double factor) {
  st.a = st.anchor + factor * (st.a - st.anchor);
  st.b = st.anchor + factor * (st.b - st.anchor);
  if (st.width() < 1e-9) {
    st.a = st.anchor;
    st.b = st.anchor;
  }
}

}  // namespace detail

namespace detail {

struct StationPlan {
  std::vector<Station> stations;        // global, in path order
  std::vector<int> leg_of_station;      // which leg each inter-station gap ends
  std::vector<int> node_station_index;  // order position -> station index
  std::vector<std::vector<Point2>> spines;
};

// Entry/exit segments through the sensing nodes plus outer-bisector segments
// at every spine bend, clipped to the viewing regions and free space, then
// shrunk until the hull between each consecutive pair is obstacle free.
inline StationPlan build_stations(const Scenario& scn, const VisitationOrder& ord,
                                  std::span<const Point2> nodes,
                                  const VisibilityGraph& vg,
                                  std::span<const ViewingRegion> regions) {
  StationPlan sp;
  const double r = scn.r;
  const auto& obstacles = vg.obstacles;
  const int legs = static_cast<int>(ord.order.size()) - 1;
  sp.node_station_index.assign(ord.order.size(), -1);

  Point2 last_dir{1.0, 0.0};
  for (int leg = 0; leg < legs; ++leg) {
    const std::vector<Point2> spine = vg.polyline(ord.order[leg], ord.order[leg + 1]);
    sp.spines.push_back(spine);
    if (leg == 0) {
      Station st;
      st.anchor = st.a = st.b = nodes[ord.order[0]];
      st.node_station = true;
      sp.stations.push_back(st);
      sp.node_station_index[0] = 0;
      sp.leg_of_station.push_back(leg);
    }
    for (std::size_t k = 1; k < spine.size(); ++k) {
      const Point2 v = spine[k];
      Point2 incoming = spine[k] - spine[k - 1];
      if (norm(incoming) > 1e-12) last_dir = normalized(incoming);
      Station st;
      st.anchor = v;
      if (k + 1 == spine.size()) {
        // sensing-node station, perpendicular to the incoming direction
        st.node_station = true;
        const Point2 d = perp(last_dir);
        const int target = ord.order[leg + 1];
        const ViewingRegion& region = regions[target];
        double plus = first_hit_along(v, d, r, obstacles);
        double minus = first_hit_along(v, -1.0 * d, r, obstacles);
        plus = region_extent(v, d, plus, region);
        minus = region_extent(v, -1.0 * d, minus, region);
        st.a = v - minus * d;
        st.b = v + plus * d;
        sp.node_station_index[leg + 1] = static_cast<int>(sp.stations.size());
      } else {
        // bend around an obstacle vertex; open up along the outer bisector
        const Point2 outgoing = normalized(spine[k + 1] - spine[k]);
        Point2 d = last_dir - outgoing;
        if (norm(d) < 1e-9) d = perp(last_dir);
        d = normalized(d);
        const double ext = first_hit_along(v, d, r, obstacles);
        st.a = v;
        st.b = v + ext * d;
      }
      if (st.width() < 1e-9) st.a = st.b = st.anchor;
      sp.stations.push_back(st);
      sp.leg_of_station.push_back(leg);
    }
  }

  // Shrink until every consecutive hull is obstacle free and non-crossing.
  for (int pass = 0; pass < 200; ++pass) {
    bool changed = false;
    for (std::size_t k = 0; k + 1 < sp.stations.size(); ++k) {
      Station& s1 = sp.stations[k];
      Station& s2 = sp.stations[k + 1];
      if (pair_safe(s1, s2, obstacles)) continue;
      if (s1.width() < 1e-9 && s2.width() < 1e-9)
        throw std::logic_error("build_stations: spine segment not free");
      shrink_station(s1, 0.5);
      shrink_station(s2, 0.5);
      changed = true;
    }
    if (!changed) break;
  }
  return sp;
}

}  // namespace detail

// Corridors for each leg of the visitation order.
inline std::vector<Corridor> build_corridors(const Scenario& scn,
                                             const VisitationOrder& ord,
                                             std::span<const Point2> nodes,
                                             const VisibilityGraph& vg,
                                             std::span<const ViewingRegion> regions) {
  const detail::StationPlan sp = detail::build_stations(scn, ord, nodes, vg, regions);
  std::vector<Corridor> corridors(sp.spines.size());
  for (std::size_t i = 0; i < sp.spines.size(); ++i) corridors[i].spine = sp.spines[i];
  for (std::size_t k = 0; k < sp.stations.size(); ++k) {
    const auto& st = sp.stations[k];
    const int leg = sp.leg_of_station[k];
    corridors[leg].crossed_edges.push_back({st.a, st.b});
    if (st.node_station && k > 0 && leg + 1 < static_cast<int>(corridors.size()))
      corridors[leg + 1].crossed_edges.insert(corridors[leg + 1].crossed_edges.begin(),
                                              {st.a, st.b});
    if (k + 1 < sp.stations.size()) {
      const auto& nx = sp.stations[k + 1];
      auto hull = detail::convex_hull({st.a, st.b, nx.a, nx.b});
      if (hull.size() >= 3) {
        const int tleg = sp.leg_of_station[k + 1];
        for (std::size_t h = 1; h + 1 < hull.size(); ++h)
          corridors[tleg].triangles.push_back({hull[0], hull[h], hull[h + 1]});
      }
    }
  }
  return corridors;
}

struct ObstaclePlan {
  CoveragePlan plan;
  std::vector<ViewingRegion> regions;
  std::vector<int> base;  // base-set region indices in selection order
  double hoogeveen_length = 0.0;
  double optimized_length = 0.0;
  std::vector<Corridor> corridors;
};

namespace detail {

inline bool vregions_overlap(const ViewingRegion& a, const ViewingRegion& b) {
  return !regions_disjoint(a, b);
}

inline std::vector<int> base_set_regions(std::span<const ViewingRegion> regions,
                                         std::optional<std::uint64_t> shuffle_seed) {
  const int n = static_cast<int>(regions.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (shuffle_seed) {
    std::mt19937_64 rng(*shuffle_seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  std::vector<std::vector<char>> ov(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      ov[i][j] = ov[j][i] = vregions_overlap(regions[i], regions[j]) ? 1 : 0;

  std::vector<char> removed(n, 0);
  std::vector<int> base;
  for (int i = 0; i < n; ++i) {
    bool isolated = true;
    for (int j = 0; j < n && isolated; ++j)
      if (j != i && ov[i][j]) isolated = false;
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
      if (!removed[j] && ov[i][j]) removed[j] = 1;
  }
  return base;
}

// Boundary point of `host` inside `member`, at the middle of the longest
// angular run of boundary samples that lie in `member`.
inline std::optional<Point2> boundary_overlap_midpoint(const ViewingRegion& host,
                                                       const ViewingRegion& member) {
  const auto loop = host.boundary_polyline(1e-3 * host.radius);
  const int m = static_cast<int>(loop.size());
  if (m == 0) return std::nullopt;
  std::vector<char> in(m, 0);
  bool any = false, all = true;
  for (int i = 0; i < m; ++i) {
    in[i] = member.contains(loop[i]) ? 1 : 0;
    any |= in[i];
    all &= (in[i] != 0);
  }
  if (!any) return std::nullopt;
  if (all) return loop[0];
  // longest cyclic run of 1s
  int best_len = 0, best_start = 0;
  int i = 0;
  while (in[i]) i = (i + 1) % m;  // start at a 0 (exists)
  for (int step = 0, start = -1, len = 0; step <= 2 * m; ++step) {
    const int idx = (i + step) % m;
    if (in[idx]) {
      if (start < 0) start = step;
      ++len;
      if (len > best_len) {
        best_len = len;
        best_start = start;
      }
    } else {
      start = -1;
      len = 0;
    }
    if (step >= m && !in[idx]) break;
  }
  const int mid = (i + best_start + best_len / 2) % m;
  return loop[mid];
}

inline std::vector<Point2> initial_sensing_nodes_regions(
    const Scenario& scn, std::span<const ViewingRegion> regions,
    const std::vector<int>& base_order) {
  const int n = scn.n();
  std::vector<char> is_base(n, 0);
  for (int b : base_order) is_base[b] = 1;
  std::vector<Point2> nodes(n);

  auto owner_of = [&](int j) {
    for (int b : base_order)
      if (vregions_overlap(regions[b], regions[j])) return b;
    return -1;
  };

  for (int i = 0; i < n; ++i) {
    if (is_base[i]) {
      bool isolated = true;
      for (int j = 0; j < n && isolated; ++j)
        if (j != i && vregions_overlap(regions[i], regions[j])) isolated = false;
      if (isolated || regions[i].touches_obstacle) {
        nodes[i] = scn.targets[i];
      } else {
        // midpoint of the union of overlap runs with all neighbors
        std::optional<Point2> best;
        int best_run = -1;
        for (int j = 0; j < n; ++j) {
          if (j == i || !vregions_overlap(regions[i], regions[j])) continue;
          if (auto p = boundary_overlap_midpoint(regions[i], regions[j])) {
            best = p;
            best_run = j;
            break;
          }
        }
        (void)best_run;
        nodes[i] = best ? *best : scn.targets[i];
      }
    } else {
      const int b = owner_of(i);
      if (b < 0) throw std::logic_error("initial nodes: uncovered viewing region");
      auto p = boundary_overlap_midpoint(regions[b], regions[i]);
      nodes[i] = p ? *p : scn.targets[i];
    }
  }
  return nodes;
}

}  // namespace detail

// Full pipeline among obstacles: viewing regions, base set, initial nodes,
// visibility-graph ordering, corridor via-point optimization, reduction.
// With no obstacles this degenerates exactly to the free-space planner.
inline ObstaclePlan plan_with_obstacles(const Scenario& scn) {
  scn.validate();
  ObstaclePlan out;
  out.regions = viewing_regions(scn);

  if (scn.obstacles.empty()) {
    const std::vector<int> base = base_set_circles(scn, scn.seed);
    std::vector<Point2> nodes0 = initial_sensing_nodes(scn, base);
    nodes0[scn.start()] = scn.targets[scn.start()];
    out.base = base;
    out.hoogeveen_length =
        hoogeveen_order(std::span<const Point2>(nodes0), scn.start(), scn.end()).length;
    out.plan = reduced_sensing_path(scn);
    out.optimized_length = out.plan.length;
    return out;
  }

  out.base = detail::base_set_regions(out.regions, scn.seed);
  std::vector<Point2> nodes0 =
      detail::initial_sensing_nodes_regions(scn, out.regions, out.base);
  nodes0[scn.start()] = scn.targets[scn.start()];

  const VisibilityGraph vg = visibility_metric(nodes0, scn.obstacles);
  for (int i = 0; i < scn.n(); ++i) {
    for (int j = 0; j < scn.n(); ++j) {
      if (!std::isfinite(vg.length(i, j)))
        throw std::invalid_argument("plan_with_obstacles: sensing nodes not connected");
    }
  }
  const VisitationOrder ord = hoogeveen_order(
      WeightedGraph::from_metric(scn.n(), [&](int i, int j) { return vg.length(i, j); }),
      scn.start(), scn.end());
  out.hoogeveen_length = ord.length;

  const detail::StationPlan sp =
      detail::build_stations(scn, ord, nodes0, vg, out.regions);
  out.corridors = build_corridors(scn, ord, nodes0, vg, out.regions);

  ViaSequence via;
  via.regions.reserve(sp.stations.size());
  via.positions.reserve(sp.stations.size());
  for (std::size_t k = 0; k < sp.stations.size(); ++k) {
    const auto& st = sp.stations[k];
    if (k == 0)
      via.regions.push_back(FixedPoint{st.anchor});
    else if (st.width() < 1e-9)
      via.regions.push_back(FixedPoint{st.anchor});
    else
      via.regions.push_back(SegmentRegion{st.a, st.b});
    via.positions.push_back(st.anchor);
  }
  via = optimize_sequence(std::move(via));
  out.optimized_length = via.length;

  std::vector<Point2> path;
  for (Point2 p : via.positions) {
    if (path.empty() || distance(path.back(), p) > 1e-12) path.push_back(p);
  }
  if (path.empty()) path.push_back(scn.targets[scn.start()]);
  if (path.size() == 1) path.push_back(path.front());
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!sight_clear(path[i], path[i + 1], scn.obstacles))
      throw std::logic_error("plan_with_obstacles: optimized path not collision free");
  }

  const auto intervals = overlap_intervals<ViewingRegion>(
      path, std::span<const ViewingRegion>(out.regions));
  const NodeReduction red = reduce_nodes(intervals, path);

  out.plan.order = ord.order;
  out.plan.path = path;
  out.plan.length = polyline_length(path);
  out.plan.nodes = red.points;
  out.plan.assignment.assign(scn.n(), -1);
  for (std::size_t i = 0; i < intervals.size(); ++i)
    out.plan.assignment[intervals[i].region] = red.assignment[i];
  return out;
}

}  // namespace covplan
