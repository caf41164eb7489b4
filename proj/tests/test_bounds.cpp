#include <catch2/catch_amalgamated.hpp>

#include "covplan/bounds.hpp"
#include "covplan/oracle.hpp"

using namespace covplan;

TEST_CASE("solve_theta_star_odd") {
  const double theta = solve_theta_star_odd();
  CHECK(theta == Catch::Approx(0.2724).margin(5e-4));
  CHECK(theta > 0.0);
  CHECK(theta < kPi / 4.0);
  // endpoint sign
  CHECK(std::tan(0.0) * (1.0 + std::sin(0.0)) - (std::sqrt(3.0) - std::cos(0.0)) < 0.0);
  // resubstitution
  const double resid =
      std::tan(2.0 * theta) * (1.0 + std::sin(theta)) - (std::sqrt(3.0) - std::cos(theta));
  CHECK(std::abs(resid) < 1e-10);
}

TEST_CASE("kappa_and_path values") {
  const KappaPath kp = kappa_and_path(7, 1.0);
  CHECK(kp.kappa_odd == Catch::Approx(2.4296).margin(5e-4));
  CHECK(kp.p_odd == Catch::Approx(5.4296).margin(5e-4));
  CHECK(kp.l_tsp == Catch::Approx(12.0));
  CHECK(kp.ratio_bound == Catch::Approx(2.2101).margin(5e-4));
  CHECK_THROWS_AS(kappa_and_path(4, 1.0), std::invalid_argument);

  // asymptotics: the ratio tends to 2 and the factor to 10/3
  const KappaPath big = kappa_and_path(1000000, 1.0);
  CHECK(big.ratio_bound == Catch::Approx(2.0).margin(1e-4));
  const BoundReport rep = evaluate_bounds(1000000, 1.0, 1.0, 0, 1.0);
  CHECK(rep.prop1_factor == Catch::Approx(10.0 / 3.0).margin(1e-4));
}

TEST_CASE("worst_case_instance layout") {
  SECTION("n = 5 centers") {
    const Scenario scn = worst_case_instance(5, 1.0);
    REQUIRE(scn.n() == 5);
    const double s3 = std::sqrt(3.0);
    const std::vector<Point2> expect{{0, 0}, {1, s3}, {2, 0}, {3, s3}, {4, 0}};
    for (int i = 0; i < 5; ++i) {
      CHECK(scn.targets[i].x == Catch::Approx(expect[i].x));
      CHECK(scn.targets[i].y == Catch::Approx(expect[i].y));
    }
    for (int i = 0; i + 1 < 5; ++i)
      CHECK(distance(scn.targets[i], scn.targets[i + 1]) == Catch::Approx(2.0).margin(1e-12));
  }
  SECTION("n = 2") {
    const Scenario scn = worst_case_instance(2, 1.0);
    CHECK(distance(scn.targets[0], scn.targets[1]) == Catch::Approx(2.0).margin(1e-12));
  }
  SECTION("minimum pairwise distance is exactly 2r") {
    for (int n : {3, 6, 9, 12}) {
      const Scenario scn = worst_case_instance(n, 0.7);
      double min_d = 1e300;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          min_d = std::min(min_d, distance(scn.targets[i], scn.targets[j]));
      CHECK(min_d == Catch::Approx(2.0 * 0.7).margin(1e-12));
    }
  }
}

TEST_CASE("evaluate_bounds") {
  SECTION("proposition 2 arithmetic") {
    const BoundReport rep = evaluate_bounds(5, 1.0, 10.0, 0, 1.0);
    CHECK(rep.prop2_bound == Catch::Approx((5.0 / 3.0) * (90.0 + 1.0 + 8.0 * kPi)));
    CHECK(rep.prop2_bound == Catch::Approx(193.55).margin(0.01));
  }
  SECTION("delta and the proposition 1 factor at n = 7") {
    const BoundReport rep = evaluate_bounds(7, 1.0, 1.0, 0, 1.0);
    CHECK(rep.delta_n == Catch::Approx(0.2892).margin(5e-4));
    CHECK(rep.prop1_factor == Catch::Approx(4.297).margin(5e-3));
  }
  SECTION("proposition 3 with rho_bar = r") {
    const double l_opt = 7.0, r = 1.0;
    const int m = 9;
    const BoundReport rep = evaluate_bounds(6, r, l_opt, m, r);
    const double expect = (5.0 / 3.0) * (9.0 * l_opt + 2.0 * r * m) +
                          (40.0 * kPi / 3.0 + 2.0) * r;
    CHECK(rep.prop3_bound == Catch::Approx(expect).margin(1e-12));
  }
  SECTION("domain errors") {
    CHECK_THROWS_AS(evaluate_bounds(6, 1.0, 1.0, 0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(evaluate_bounds(6, 1.0, 1.0, 0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(evaluate_bounds(6, 1.0, -1.0, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(evaluate_bounds(6, 1.0, 1.0, -1, 1.0), std::invalid_argument);
  }
  SECTION("delta is strictly decreasing") {
    double prev = evaluate_bounds(5, 1.0, 1.0, 0, 1.0).delta_n;
    for (int n = 6; n <= 1000; ++n) {
      const double d = evaluate_bounds(n, 1.0, 1.0, 0, 1.0).delta_n;
      CHECK(d < prev);
      prev = d;
    }
  }
}

TEST_CASE("packing oracle consistency for odd n") {
  for (int n : {5, 7}) {
    const Scenario scn = worst_case_instance(n, 1.0);
    const OracleResult res = exact_cover_p1(scn);
    const KappaPath kp = kappa_and_path(n, 1.0);
    CHECK(res.value >= kp.p_odd - 1e-6);
    CHECK(res.value == Catch::Approx(kp.p_odd).epsilon(0.01));
    const OracleResult tsp = exact_st_tsp(scn.targets, 0, n - 1);
    CHECK(tsp.value == Catch::Approx(kp.l_tsp).margin(1e-9));
    CHECK(tsp.value / res.value <= kp.ratio_bound + 1e-6);
  }
}
