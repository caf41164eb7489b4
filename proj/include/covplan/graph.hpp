#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "covplan/errors.hpp"
#include "covplan/geometry.hpp"

namespace covplan {

struct WeightedGraph {
  int n = 0;
  std::vector<double> w;  // row-major n*n, symmetric, zero diagonal

  double weight(int i, int j) const { return w[static_cast<std::size_t>(i) * n + j]; }

  static WeightedGraph from_points(std::span<const Point2> pts) {
    WeightedGraph g;
    g.n = static_cast<int>(pts.size());
    g.w.assign(static_cast<std::size_t>(g.n) * g.n, 0.0);
    for (int i = 0; i < g.n; ++i)
      for (int j = i + 1; j < g.n; ++j) {
        const double d = distance(pts[i], pts[j]);
        g.w[static_cast<std::size_t>(i) * g.n + j] = d;
        g.w[static_cast<std::size_t>(j) * g.n + i] = d;
      }
    return g;
  }

  template <class Metric>
  static WeightedGraph from_metric(int n, Metric d) {
    WeightedGraph g;
    g.n = n;
    g.w.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double dij = d(i, j);
        g.w[static_cast<std::size_t>(i) * n + j] = dij;
        g.w[static_cast<std::size_t>(j) * n + i] = dij;
      }
    return g;
  }

  void validate() const {
    if (n < 1 || w.size() != static_cast<std::size_t>(n) * n)
      throw std::invalid_argument("weighted graph: bad size");
    for (int i = 0; i < n; ++i) {
      if (weight(i, i) != 0.0) throw std::invalid_argument("weighted graph: nonzero diagonal");
      for (int j = 0; j < n; ++j) {
        const double x = weight(i, j);
        if (!std::isfinite(x) || x < 0.0)
          throw std::invalid_argument("weighted graph: weights must be finite and non-negative");
        if (x != weight(j, i)) throw std::invalid_argument("weighted graph: asymmetric");
      }
    }
  }
};

using Edge = std::pair<int, int>;

struct EdgeSet {
  std::vector<Edge> edges;  // duplicates allowed (multigraph)

  double total_weight(const WeightedGraph& g) const {
    double s = 0.0;
    for (const Edge& e : edges) s += g.weight(e.first, e.second);
    return s;
  }
};

// Prim with cut-edge scanning; ties broken by lexicographically smallest
// normalized edge (i, j), i < j, for reproducible outputs.
inline EdgeSet prim_mst(const WeightedGraph& g) {
  const int n = g.n;
  if (n < 1) throw std::invalid_argument("prim_mst: empty graph");
  EdgeSet tree;
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  in[0] = 1;
  for (int step = 1; step < n; ++step) {
    double best = std::numeric_limits<double>::infinity();
    Edge best_edge{-1, -1};
    for (int i = 0; i < n; ++i) {
      if (!in[i]) continue;
      for (int j = 0; j < n; ++j) {
        if (in[j]) continue;
        const double wij = g.weight(i, j);
        Edge cand{std::min(i, j), std::max(i, j)};
        if (wij < best || (wij == best && cand < best_edge)) {
          best = wij;
          best_edge = cand;
        }
      }
    }
    tree.edges.push_back(best_edge);
    in[best_edge.first] = 1;
    in[best_edge.second] = 1;
  }
  return tree;
}

inline std::vector<int> node_degrees(const EdgeSet& edges, int n) {
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (const Edge& e : edges.edges) {
    if (e.first < 0 || e.first >= n || e.second < 0 || e.second >= n)
      throw std::invalid_argument("edge index out of range");
    ++deg[e.first];
    ++deg[e.second];
  }
  return deg;
}

// Endpoints s, t must end up odd, everyone else even; returns the violators.
inline std::vector<int> wrong_degree_nodes(const EdgeSet& tree, int n, int s, int t) {
  const std::vector<int> deg = node_degrees(tree, n);
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    const bool odd = (deg[i] % 2) == 1;
    const bool want_odd = (i == s || i == t);
    if (odd != want_odd) out.push_back(i);
  }
  return out;
}

// Exact minimum-weight perfect matching by subset DP; |nodes| <= 20.
template <class Metric>
EdgeSet min_perfect_matching(const std::vector<int>& nodes, Metric d) {
  const int k = static_cast<int>(nodes.size());
  if (k % 2 != 0) throw std::invalid_argument("min_perfect_matching: odd node count");
  if (k > 20) throw CapacityError("min_perfect_matching: more than 20 nodes");
  EdgeSet out;
  if (k == 0) return out;

  const std::uint32_t full = (1u << k) - 1u;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dp(full + 1u, inf);
  std::vector<int> pick(full + 1u, -1);
  dp[0] = 0.0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const int i = std::countr_zero(mask);
    if (!((mask >> i) & 1u)) continue;
    for (int j = i + 1; j < k; ++j) {
      if (!((mask >> j) & 1u)) continue;
      const std::uint32_t rest = mask & ~(1u << i) & ~(1u << j);
      if (dp[rest] == inf) continue;
      const double cand = dp[rest] + d(nodes[i], nodes[j]);
      if (cand < dp[mask]) {
        dp[mask] = cand;
        pick[mask] = j;
      }
    }
  }
  std::uint32_t mask = full;
  while (mask) {
    const int i = std::countr_zero(mask);
    const int j = pick[mask];
    out.edges.emplace_back(std::min(nodes[i], nodes[j]), std::max(nodes[i], nodes[j]));
    mask &= ~(1u << i) & ~(1u << j);
  }
  std::reverse(out.edges.begin(), out.edges.end());
  return out;
}

inline EdgeSet min_perfect_matching(const std::vector<int>& nodes, const WeightedGraph& g) {
  return min_perfect_matching(nodes, [&g](int i, int j) { return g.weight(i, j); });
}

// Hierholzer path from s to t, consuming edges in insertion order.
inline std::vector<int> eulerian_path(const EdgeSet& edges, int n, int s, int t) {
  const std::vector<int> deg = node_degrees(edges, n);
  for (int i = 0; i < n; ++i) {
    const bool odd = (deg[i] % 2) == 1;
    if ((i == s || i == t) != odd && s != t)
      throw std::logic_error("eulerian_path: degree parity violated");
  }
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
  for (std::size_t e = 0; e < edges.edges.size(); ++e) {
    const auto [a, b] = edges.edges[e];
    adj[a].emplace_back(b, static_cast<int>(e));
    adj[b].emplace_back(a, static_cast<int>(e));
  }
  std::vector<char> used(edges.edges.size(), 0);
  std::vector<std::size_t> next(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{s};
  std::vector<int> walk;
  while (!stack.empty()) {
    const int v = stack.back();
    bool advanced = false;
    while (next[v] < adj[v].size()) {
      const auto [u, e] = adj[v][next[v]];
      ++next[v];
      if (used[e]) continue;
      used[e] = 1;
      stack.push_back(u);
      advanced = true;
      break;
    }
    if (!advanced) {
      walk.push_back(v);
      stack.pop_back();
    }
  }
  if (walk.size() != edges.edges.size() + 1)
    throw std::logic_error("eulerian_path: edge multigraph disconnected");
  std::reverse(walk.begin(), walk.end());
  if (walk.front() != s || walk.back() != t)
    throw std::logic_error("eulerian_path: walk endpoints wrong");
  return walk;
}

// Keeps the first occurrence of every node except the terminal, which stays
// last. The result is a subsequence of the walk, so under a triangle-
// inequality metric it can only get shorter.
inline std::vector<int> shortcut_walk(const std::vector<int>& walk) {
  if (walk.size() <= 1) return walk;
  const int t = walk.back();
  std::vector<int> out;
  std::vector<int> seen;
  for (int v : walk) {
    if (v == t) continue;
    if (std::find(seen.begin(), seen.end(), v) != seen.end()) continue;
    seen.push_back(v);
    out.push_back(v);
  }
  out.push_back(t);
  return out;
}

}  // namespace covplan
