#pragma once

#include <cmath>
#include <stdexcept>

#include "covplan/scenario.hpp"

namespace covplan {

// Path-length bound ingredients and the evaluated bounds for one instance.
struct BoundReport {
  double theta_star = 0.0;   // radians
  double kappa_odd = 0.0;
  double delta_n = 0.0;
  double prop1_factor = 0.0;  // (10/3)(1 + delta(n))
  double prop2_bound = 0.0;   // meters
  double prop3_bound = 0.0;   // meters
  // echoed inputs
  int n = 0;
  double r = 0.0;
  double l_opt = 0.0;
  int m = 0;
  double rho_bar = 0.0;
};

// Root of tan(2*theta)(1 + sin(theta)) = sqrt(3) - cos(theta) on (0, pi/4).
// The left side runs from 0 to +inf on that interval while the right side
// stays bounded, so bisection brackets cleanly.
inline double solve_theta_star_odd() {
  static const double theta = [] {
    auto f = [](double th) {
      return std::tan(2.0 * th) * (1.0 + std::sin(th)) - (std::sqrt(3.0) - std::cos(th));
    };
    double lo = 1e-12;
    double hi = kPi / 4.0 - 1e-9;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (f(mid) < 0.0)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  }();
  return theta;
}

inline double kappa_odd_of(double theta) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double sq = std::sqrt((1.0 + s) * (1.0 + s) + (std::sqrt(3.0) - c) * (std::sqrt(3.0) - c));
  return 2.0 * sq - 2.0 * s;
}

struct KappaPath {
  double kappa_odd = 0.0;
  double p_odd = 0.0;       // r * (n - 4 + kappa)
  double l_tsp = 0.0;       // 2 (n - 1) r
  double ratio_bound = 0.0; // 2 (n - 1) / (n - 4 + kappa)
};

inline KappaPath kappa_and_path(int n, double r) {
  if (n <= 4) throw std::invalid_argument("kappa_and_path: requires n > 4");
  if (!(r > 0.0)) throw std::invalid_argument("kappa_and_path: radius must be positive");
  KappaPath out;
  out.kappa_odd = kappa_odd_of(solve_theta_star_odd());
  out.p_odd = r * (n - 4 + out.kappa_odd);
  out.l_tsp = 2.0 * (n - 1) * r;
  out.ratio_bound = 2.0 * (n - 1) / (n - 4 + out.kappa_odd);
  return out;
}

// Worst-case arrangement: tangent sensing circles alternating between two rows
// offset by sqrt(3)*r with horizontal spacing r. Consecutive targets sit
// exactly 2r apart and no pair is closer, so the target path length is
// exactly 2(n-1)r.
inline Scenario worst_case_instance(int n, double r) {
  if (n < 2) throw std::invalid_argument("worst_case_instance: need n >= 2");
  if (!(r > 0.0)) throw std::invalid_argument("worst_case_instance: radius must be positive");
  Scenario scn;
  scn.r = r;
  scn.targets.reserve(n);
  for (int i = 1; i <= n; ++i) {
    const double y = (i % 2 == 1) ? 0.0 : std::sqrt(3.0) * r;
    scn.targets.push_back({(i - 1) * r, y});
  }
  scn.start_index = 0;
  scn.end_index = n - 1;
  return scn;
}

inline BoundReport evaluate_bounds(int n, double r, double l_opt, int m, double rho_bar) {
  if (n < 4) throw std::invalid_argument("evaluate_bounds: requires n >= 4");
  if (!(r > 0.0)) throw std::invalid_argument("evaluate_bounds: radius must be positive");
  if (!(l_opt >= 0.0)) throw std::invalid_argument("evaluate_bounds: l_opt must be non-negative");
  if (m < 0) throw std::invalid_argument("evaluate_bounds: m must be non-negative");
  if (!(rho_bar > 0.0) || rho_bar > r + 1e-12)
    throw std::invalid_argument("evaluate_bounds: rho_bar must lie in (0, r]");

  BoundReport rep;
  rep.n = n;
  rep.r = r;
  rep.l_opt = l_opt;
  rep.m = m;
  rep.rho_bar = rho_bar;
  rep.theta_star = solve_theta_star_odd();
  rep.kappa_odd = kappa_odd_of(rep.theta_star);
  rep.delta_n = (4.0 - rep.kappa_odd) / (n - 4 + rep.kappa_odd);
  rep.prop1_factor = (10.0 / 3.0) * (1.0 + rep.delta_n);
  rep.prop2_bound = (5.0 / 3.0) * (9.0 * l_opt + (1.0 + 8.0 * kPi) * r);
  const double blow = 8.0 * (r / rho_bar) * (r / rho_bar);
  rep.prop3_bound = (5.0 / 3.0) * ((1.0 + blow) * l_opt + 2.0 * r * m) +
                    ((5.0 / 3.0) * blow * kPi + 2.0) * r;
  return rep;
}

}  // namespace covplan
