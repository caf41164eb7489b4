#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "covplan/graph.hpp"

namespace covplan {

// S-to-T visitation order with its length under the supplied metric.
struct VisitationOrder {
  std::vector<int> order;  // starts at s, ends at t, each node once
  double length = 0.0;
};

// MST + parity-fixing matching + Eulerian s-t path + shortcutting. Under a
// triangle-inequality metric the result is within 5/3 of the optimal s-to-t
// Hamiltonian path.
inline VisitationOrder hoogeveen_order(const WeightedGraph& g, int s, int t) {
  const int n = g.n;
  if (n < 2) throw std::invalid_argument("hoogeveen_order: need at least 2 nodes");
  if (s < 0 || s >= n || t < 0 || t >= n || s == t)
    throw std::invalid_argument("hoogeveen_order: bad endpoints");

  const EdgeSet tree = prim_mst(g);
  const std::vector<int> vjoin = wrong_degree_nodes(tree, n, s, t);
  EdgeSet multi = tree;
  if (!vjoin.empty()) {
    const EdgeSet matching = min_perfect_matching(vjoin, g);
    multi.edges.insert(multi.edges.end(), matching.edges.begin(), matching.edges.end());
  }
  const std::vector<int> walk = eulerian_path(multi, n, s, t);
  VisitationOrder out;
  out.order = shortcut_walk(walk);
  for (std::size_t i = 0; i + 1 < out.order.size(); ++i)
    out.length += g.weight(out.order[i], out.order[i + 1]);
  return out;
}

inline VisitationOrder hoogeveen_order(std::span<const Point2> pts, int s, int t) {
  return hoogeveen_order(WeightedGraph::from_points(pts), s, t);
}

}  // namespace covplan
