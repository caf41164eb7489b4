#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "covplan/convex_path.hpp"
#include "covplan/errors.hpp"
#include "covplan/free_planner.hpp"
#include "covplan/graph.hpp"
#include "covplan/parallel.hpp"
#include "covplan/scenario.hpp"

namespace covplan {

struct OracleResult {
  double value = 0.0;
  std::vector<int> order;
  std::uint64_t enumerated = 0;
  double wall_seconds = 0.0;
};

namespace detail {

inline std::uint64_t factorial(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// k-th permutation (factorial number system) of the given items.
inline std::vector<int> unrank_permutation(std::vector<int> items, std::uint64_t rank) {
  std::vector<int> out;
  out.reserve(items.size());
  for (int k = static_cast<int>(items.size()); k > 0; --k) {
    const std::uint64_t f = factorial(k - 1);
    const std::uint64_t idx = rank / f;
    rank %= f;
    out.push_back(items[idx]);
    items.erase(items.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return out;
}

}  // namespace detail

// Exact shortest s-to-t path through all nodes by permutation of the
// intermediates. Capacity n <= 9.
template <class Metric>
OracleResult exact_st_tsp(int n, int s, int t, Metric d) {
  if (n > 9) throw CapacityError("exact_st_tsp: n > 9");
  if (n < 2 || s == t || s < 0 || s >= n || t < 0 || t >= n)
    throw std::invalid_argument("exact_st_tsp: bad instance");
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<int> mid;
  for (int i = 0; i < n; ++i)
    if (i != s && i != t) mid.push_back(i);
  std::sort(mid.begin(), mid.end());

  OracleResult res;
  res.value = std::numeric_limits<double>::infinity();
  do {
    double len = 0.0;
    int prev = s;
    for (int v : mid) {
      len += d(prev, v);
      prev = v;
    }
    len += d(prev, t);
    ++res.enumerated;
    if (len < res.value) {
      res.value = len;
      res.order.clear();
      res.order.push_back(s);
      res.order.insert(res.order.end(), mid.begin(), mid.end());
      res.order.push_back(t);
    }
  } while (std::next_permutation(mid.begin(), mid.end()));

  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

inline OracleResult exact_st_tsp(std::span<const Point2> pts, int s, int t) {
  return exact_st_tsp(static_cast<int>(pts.size()), s, t,
                      [&](int i, int j) { return distance(pts[i], pts[j]); });
}

// Minimum over all visitation orders of the convex fixed-order optimum: the
// shortest path that starts at the start target, touches every sensing circle,
// and ends inside the final circle. Circles may overlap; this equals the
// multi-view optimum because any covering path touches each circle in some
// order. Capacity n <= 9.
inline OracleResult exact_cover_relaxed(const Scenario& scn) {
  scn.validate();
  const int n = scn.n();
  if (n > 9) throw CapacityError("exact_cover_relaxed: n > 9");
  const auto t0 = std::chrono::steady_clock::now();
  const int s = scn.start();
  const int t = scn.end();

  std::vector<int> mid;
  for (int i = 0; i < n; ++i)
    if (i != s && i != t) mid.push_back(i);
  std::sort(mid.begin(), mid.end());
  const std::uint64_t total = detail::factorial(static_cast<int>(mid.size()));

  auto solve_order = [&](const std::vector<int>& m) {
    ViaSequence via;
    via.regions.push_back(FixedPoint{scn.targets[s]});
    for (int v : m) via.regions.push_back(SensingCircle{scn.targets[v], scn.r});
    via.regions.push_back(SensingCircle{scn.targets[t], scn.r});
    return optimize_sequence(std::move(via)).length;
  };
  // Admissible per-order lower bound: a leg between two disks is at least the
  // center distance minus both radii. Orders provably worse than the running
  // best by more than 1e-9 are skipped; every near-optimal order is solved, so
  // the result does not depend on the worker count.
  auto order_lower_bound = [&](const std::vector<int>& m) {
    double lb = 0.0;
    Point2 prev = scn.targets[s];
    double prev_r = 0.0;
    for (std::size_t i = 0; i <= m.size(); ++i) {
      const int v = i < m.size() ? m[i] : t;
      lb += std::max(0.0, distance(prev, scn.targets[v]) - prev_r - scn.r);
      prev = scn.targets[v];
      prev_r = scn.r;
    }
    return std::max(lb, distance(scn.targets[s], scn.targets[t]) - scn.r);
  };

  const int workers = std::min<std::uint64_t>(thread_cap(), std::max<std::uint64_t>(total, 1));
  std::vector<double> best(workers, std::numeric_limits<double>::infinity());
  std::vector<std::uint64_t> best_rank(workers, 0);
  parallel_for(workers, [&](int w) {
    for (std::uint64_t rank = w; rank < total; rank += workers) {
      const std::vector<int> m = detail::unrank_permutation(mid, rank);
      if (order_lower_bound(m) > best[w] + 1e-9) continue;
      const double len = solve_order(m);
      if (len < best[w] || (len == best[w] && rank < best_rank[w])) {
        best[w] = len;
        best_rank[w] = rank;
      }
    }
  });
  OracleResult res;
  res.enumerated = total;
  res.value = std::numeric_limits<double>::infinity();
  std::uint64_t rank = 0;
  for (int w = 0; w < workers; ++w) {
    if (best[w] < res.value || (best[w] == res.value && best_rank[w] < rank)) {
      res.value = best[w];
      rank = best_rank[w];
    }
  }
  res.order.push_back(s);
  for (int v : detail::unrank_permutation(mid, rank)) res.order.push_back(v);
  res.order.push_back(t);
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

// Exact optimum for the disjoint-circle problem (one node per target).
inline OracleResult exact_cover_p1(const Scenario& scn) {
  scn.validate();
  for (int i = 0; i < scn.n(); ++i)
    for (int j = i + 1; j < scn.n(); ++j)
      if (detail::targets_overlap(scn, i, j))
        throw std::invalid_argument("exact_cover_p1: sensing circles overlap");
  return exact_cover_relaxed(scn);
}

// Minimum-cardinality stabbing of the intervals by exhaustive subset search
// over the right endpoints (any stabbing can be slid right onto them).
inline std::vector<double> optimal_interval_piercing(
    std::span<const OverlapInterval> intervals) {
  const int k = static_cast<int>(intervals.size());
  if (k == 0) return {};
  if (k > 20) throw CapacityError("optimal_interval_piercing: more than 20 intervals");
  std::vector<double> cand;
  for (const auto& iv : intervals) cand.push_back(iv.b);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  const int c = static_cast<int>(cand.size());

  auto covers = [&](const std::vector<int>& picks) {
    for (const auto& iv : intervals) {
      bool hit = false;
      for (int p : picks) {
        if (cand[p] >= iv.a - 1e-9 && cand[p] <= iv.b + 1e-9) {
          hit = true;
          break;
        }
      }
      if (!hit) return false;
    }
    return true;
  };

  for (int size = 1; size <= c; ++size) {
    std::vector<int> picks(size);
    std::iota(picks.begin(), picks.end(), 0);
    while (true) {
      if (covers(picks)) {
        std::vector<double> out;
        for (int p : picks) out.push_back(cand[p]);
        return out;
      }
      int i = size - 1;
      while (i >= 0 && picks[i] == c - size + i) --i;
      if (i < 0) break;
      ++picks[i];
      for (int j = i + 1; j < size; ++j) picks[j] = picks[j - 1] + 1;
    }
  }
  throw std::logic_error("optimal_interval_piercing: unreachable");
}

// Count of connected-path constraints. The summation over subset sizes is
// authoritative; the commonly quoted closed form disagrees with it (already at
// n = 5: 1 vs 9), so both are reported with a mismatch flag.
struct SubtourCount {
  std::uint64_t summation = 0;
  std::uint64_t closed_form = 0;
  bool matches = false;
};

inline SubtourCount subtour_constraint_count(int n) {
  if (n < 3) throw std::invalid_argument("subtour_constraint_count: n >= 3 required");
  if (n > 62) throw CapacityError("subtour_constraint_count: n > 62 overflows");
  SubtourCount out;
  auto binom = [](int a, int b) -> std::uint64_t {
    if (b < 0 || b > a) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= b; ++i) r = r * static_cast<std::uint64_t>(a - b + i) / i;
    return r;
  };
  for (int k = 3; k <= n - 1; ++k) out.summation += binom(n - 2, k);
  out.closed_form = (std::uint64_t{1} << (n - 1)) -
                    static_cast<std::uint64_t>(n - 1) * (n - 2) / 2 - 1;
  out.matches = out.summation == out.closed_form;
  return out;
}

}  // namespace covplan
