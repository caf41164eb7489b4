#pragma once

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "covplan/bounds.hpp"
#include "covplan/errors.hpp"
#include "covplan/free_planner.hpp"
#include "covplan/instances.hpp"
#include "covplan/obstacle_planner.hpp"
#include "covplan/oracle.hpp"
#include "covplan/parallel.hpp"
#include "covplan/scenario.hpp"

namespace covplan {

using json = nlohmann::json;

// ---- scenario files ----
// {"targets": [[x,y],...], "r": number, "start_index": int, "end_index": int,
//  "obstacles": [[[x,y],...],...], "seed": int}; unknown keys are rejected.

inline Scenario parse_scenario(const std::string& text,
                               std::vector<std::string>* warnings = nullptr) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed scenario document: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("scenario document must be an object");
  static const std::vector<std::string> allowed{"targets", "r", "start_index",
                                                "end_index", "obstacles", "seed"};
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw std::invalid_argument("unknown scenario key: " + it.key());
  }
  if (!doc.contains("targets") || !doc["targets"].is_array())
    throw std::invalid_argument("scenario needs a targets array");
  if (!doc.contains("r") || !doc["r"].is_number())
    throw std::invalid_argument("scenario needs a numeric sensing radius r");

  Scenario scn;
  auto read_point = [](const json& j) -> Point2 {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
      throw std::invalid_argument("point must be a [x, y] number pair");
    return {j[0].get<double>(), j[1].get<double>()};
  };
  for (const auto& t : doc["targets"]) scn.targets.push_back(read_point(t));
  if (scn.n() < 2) throw std::invalid_argument("at least 2 targets required");
  for (int i = 0; i < scn.n(); ++i)
    for (int j = i + 1; j < scn.n(); ++j)
      if (distance(scn.targets[i], scn.targets[j]) < 1e-12)
        throw std::invalid_argument("duplicate target positions");
  scn.r = doc["r"].get<double>();
  if (!(scn.r > 0.0)) throw std::invalid_argument("sensing radius must be positive");
  if (doc.contains("start_index")) scn.start_index = doc["start_index"].get<int>();
  if (doc.contains("end_index")) scn.end_index = doc["end_index"].get<int>();
  if (doc.contains("seed")) scn.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("obstacles")) {
    for (const auto& jp : doc["obstacles"]) {
      Polygon poly;
      for (const auto& v : jp) poly.vertices.push_back(read_point(v));
      if (poly.vertices.size() < 3)
        throw std::invalid_argument("obstacle polygon needs at least 3 vertices");
      if (!is_ccw(poly)) {
        std::reverse(poly.vertices.begin(), poly.vertices.end());
        if (warnings)
          warnings->push_back("obstacle polygon was clockwise; reoriented to CCW");
      }
      scn.obstacles.push_back(std::move(poly));
    }
  }
  scn.validate();
  return scn;
}

inline std::string serialize_scenario(const Scenario& scn) {
  json doc;
  doc["targets"] = json::array();
  for (Point2 t : scn.targets) doc["targets"].push_back({t.x, t.y});
  doc["r"] = scn.r;
  doc["start_index"] = scn.start();
  doc["end_index"] = scn.end();
  if (!scn.obstacles.empty()) {
    doc["obstacles"] = json::array();
    for (const Polygon& poly : scn.obstacles) {
      json jp = json::array();
      for (Point2 v : poly.vertices) jp.push_back({v.x, v.y});
      doc["obstacles"].push_back(jp);
    }
  }
  if (scn.seed) doc["seed"] = *scn.seed;
  return doc.dump(2);
}

// ---- report serialization ----

inline json to_json(const BoundReport& rep) {
  return json{{"theta_star", rep.theta_star}, {"kappa_odd", rep.kappa_odd},
              {"delta_n", rep.delta_n},       {"prop1_factor", rep.prop1_factor},
              {"prop2_bound", rep.prop2_bound}, {"prop3_bound", rep.prop3_bound},
              {"n", rep.n},                   {"r", rep.r},
              {"l_opt", rep.l_opt},           {"m", rep.m},
              {"rho_bar", rep.rho_bar}};
}

inline json to_json(const OracleResult& res, bool with_timing = false) {
  json j{{"value", res.value}, {"order", res.order}, {"enumerated", res.enumerated}};
  if (with_timing) j["wall_seconds"] = res.wall_seconds;
  return j;
}

inline json to_json(const CoveragePlan& plan) {
  json nodes = json::array();
  for (Point2 p : plan.nodes) nodes.push_back({p.x, p.y});
  json path = json::array();
  for (Point2 p : plan.path) path.push_back({p.x, p.y});
  return json{{"length", plan.length},
              {"node_count", plan.nodes.size()},
              {"order", plan.order},
              {"assignment", plan.assignment},
              {"nodes", nodes},
              {"path", path}};
}

// ---- SVG rendering ----
// Sensing circles in red (one <circle> per target), the robot path as the
// single <path> element in black, sensing nodes as blue squares, obstacles and
// region outlines as gray/red polylines. Coordinates rounded at 1e-6.

namespace detail {

inline std::string svg_num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace detail

inline std::string render_svg(const Scenario& scn, const CoveragePlan& plan,
                              const std::vector<ViewingRegion>* regions = nullptr) {
  double lox = 1e300, loy = 1e300, hix = -1e300, hiy = -1e300;
  auto grow = [&](Point2 p) {
    lox = std::min(lox, p.x);
    hix = std::max(hix, p.x);
    loy = std::min(loy, p.y);
    hiy = std::max(hiy, p.y);
  };
  for (Point2 t : scn.targets) grow(t);
  for (const Polygon& poly : scn.obstacles)
    for (Point2 v : poly.vertices) grow(v);
  for (Point2 p : plan.path) grow(p);
  const double margin = 1.2 * scn.r;
  lox -= margin;
  loy -= margin;
  hix += margin;
  hiy += margin;

  auto X = [&](double x) { return detail::svg_num(x - lox); };
  auto Y = [&](double y) { return detail::svg_num(hiy - y); };  // flip for SVG

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 "
      << detail::svg_num(hix - lox) << " " << detail::svg_num(hiy - loy) << "\">\n";
  for (const Polygon& poly : scn.obstacles) {
    svg << "  <polyline fill=\"#bbbbbb\" stroke=\"#666666\" stroke-width=\"0.02\" points=\"";
    for (Point2 v : poly.vertices) svg << X(v.x) << "," << Y(v.y) << " ";
    svg << X(poly.vertices.front().x) << "," << Y(poly.vertices.front().y) << "\"/>\n";
  }
  for (Point2 t : scn.targets) {
    svg << "  <circle cx=\"" << X(t.x) << "\" cy=\"" << Y(t.y) << "\" r=\""
        << detail::svg_num(scn.r) << "\" fill=\"none\" stroke=\"red\" stroke-width=\"0.02\"/>\n";
  }
  if (regions) {
    for (const ViewingRegion& vr : *regions) {
      const auto loop = vr.boundary_polyline(1e-4 * vr.radius);
      if (loop.empty()) continue;
      svg << "  <polyline fill=\"none\" stroke=\"#cc3333\" stroke-width=\"0.015\" points=\"";
      for (Point2 p : loop) svg << X(p.x) << "," << Y(p.y) << " ";
      svg << X(loop.front().x) << "," << Y(loop.front().y) << "\"/>\n";
    }
  }
  svg << "  <path fill=\"none\" stroke=\"black\" stroke-width=\"0.03\" d=\"";
  for (std::size_t i = 0; i < plan.path.size(); ++i) {
    svg << (i == 0 ? "M " : "L ") << X(plan.path[i].x) << " " << Y(plan.path[i].y) << " ";
  }
  svg << "\"/>\n";
  const double s = 0.08 * scn.r;
  for (Point2 p : plan.nodes) {
    svg << "  <rect x=\"" << detail::svg_num(p.x - lox - s / 2) << "\" y=\""
        << detail::svg_num(hiy - p.y - s / 2) << "\" width=\"" << detail::svg_num(s)
        << "\" height=\"" << detail::svg_num(s) << "\" fill=\"blue\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

// ---- commands ----

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json partial_bounds_json(int n, double r) {
  json jb;
  const double theta = solve_theta_star_odd();
  jb["theta_star"] = theta;
  jb["kappa_odd"] = kappa_odd_of(theta);
  if (n >= 4) {
    const BoundReport rep = evaluate_bounds(n, r, 0.0, 0, r);
    jb["delta_n"] = rep.delta_n;
    jb["prop1_factor"] = rep.prop1_factor;
  }
  return jb;
}

inline int cmd_plan(int problem, const std::string& file, bool with_oracle,
                    const std::string& out_path, std::ostream& out, std::ostream& err) {
  std::vector<std::string> warnings;
  const Scenario scn = parse_scenario(read_file(file), &warnings);
  for (const auto& w : warnings) err << "warning: " << w << "\n";

  const auto t0 = std::chrono::steady_clock::now();
  json report;
  CoveragePlan plan;
  if (problem == 1) {
    plan = shortest_cover(scn);
  } else if (problem == 2) {
    plan = reduced_sensing_path(scn);
  } else {
    ObstaclePlan op = plan_with_obstacles(scn);
    plan = op.plan;
    report["hoogeveen_length"] = op.hoogeveen_length;
    report["optimized_length"] = op.optimized_length;
    report["base_set"] = op.base;
  }
  report["problem"] = problem;
  report["plan"] = to_json(plan);
  report["bounds"] = partial_bounds_json(scn.n(), scn.r);
  if (with_oracle) {
    const OracleResult res = exact_cover_relaxed(scn);
    report["oracle"] = to_json(res);
    report["ratio_to_oracle"] = plan.length / std::max(res.value, 1e-300);
    if (scn.n() >= 4) {
      const BoundReport rep = evaluate_bounds(scn.n(), scn.r, res.value,
                                              /*m=*/0, /*rho_bar=*/scn.r);
      report["bounds"]["prop1_bound"] = rep.prop1_factor * res.value;
      report["bounds"]["prop2_bound"] = rep.prop2_bound;
    }
  }
  report["timing"] = {
      {"seconds",
       std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
  const std::string text = report.dump(2) + "\n";
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    f << text;
  } else {
    out << text;
  }
  return 0;
}

inline int cmd_oracle(const std::string& file, std::ostream& out) {
  const Scenario scn = parse_scenario(read_file(file));
  const auto t0 = std::chrono::steady_clock::now();
  json report;
  report["st_tsp"] = to_json(exact_st_tsp(scn.targets, scn.start(), scn.end()));
  bool disjoint = true;
  for (int i = 0; i < scn.n() && disjoint; ++i)
    for (int j = i + 1; j < scn.n() && disjoint; ++j)
      if (detail::targets_overlap(scn, i, j)) disjoint = false;
  report["cover"] = to_json(exact_cover_relaxed(scn));
  report["cover"]["disjoint_circles"] = disjoint;
  report["timing"] = {
      {"seconds",
       std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
  out << report.dump(2) << "\n";
  return 0;
}

inline int cmd_bounds(int n, double r, double l_opt, int m, double rho_bar,
                      bool have_l_opt, std::ostream& out) {
  json report;
  if (have_l_opt && n >= 4) {
    report = to_json(evaluate_bounds(n, r, l_opt, m, rho_bar));
  } else {
    report = partial_bounds_json(n, r);
    report["n"] = n;
    report["r"] = r;
    if (n > 4) {
      const KappaPath kp = kappa_and_path(n, r);
      report["p_odd"] = kp.p_odd;
      report["l_tsp_worst_case"] = kp.l_tsp;
      report["ratio_bound"] = kp.ratio_bound;
    }
  }
  out << report.dump(2) << "\n";
  return 0;
}

inline int cmd_bench(int trials, int n_lo, int n_hi, std::uint64_t seed,
                     std::ostream& out) {
  if (n_lo < 4 || n_hi > 9 || n_lo > n_hi)
    throw std::invalid_argument("bench: n-range must lie in 4..9");
  struct Row {
    int n;
    double alg, oracle, ratio, factor;
  };
  std::vector<Row> rows(trials);
  parallel_for(trials, [&](int k) {
    std::mt19937_64 rng(seed + 1315423911ull * static_cast<std::uint64_t>(k));
    const int n = n_lo + static_cast<int>(rng() % static_cast<std::uint64_t>(n_hi - n_lo + 1));
    const Scenario scn = random_disjoint_instance(n, 1.0, rng());
    const CoveragePlan plan = shortest_cover(scn);
    const OracleResult res = exact_cover_p1(scn);
    const BoundReport rep = evaluate_bounds(n, scn.r, res.value, 0, scn.r);
    rows[k] = {n, plan.length, res.value, plan.length / res.value, rep.prop1_factor};
  });
  out << "trial\tn\talg_length\toracle_length\tratio\tprop1_factor\n";
  char buf[160];
  for (int k = 0; k < trials; ++k) {
    std::snprintf(buf, sizeof(buf), "%d\t%d\t%.12g\t%.12g\t%.12g\t%.12g\n", k, rows[k].n,
                  rows[k].alg, rows[k].oracle, rows[k].ratio, rows[k].factor);
    out << buf;
  }
  return 0;
}

inline int cmd_render(const std::string& file, const std::string& out_path, int problem,
                      std::ostream& err) {
  std::vector<std::string> warnings;
  const Scenario scn = parse_scenario(read_file(file), &warnings);
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  if (problem == 0) {
    if (!scn.obstacles.empty()) {
      problem = 3;
    } else {
      problem = 2;
      bool disjoint = true;
      for (int i = 0; i < scn.n() && disjoint; ++i)
        for (int j = i + 1; j < scn.n() && disjoint; ++j)
          if (detail::targets_overlap(scn, i, j)) disjoint = false;
      if (disjoint) problem = 1;
    }
  }
  std::string svg;
  if (problem == 3) {
    const ObstaclePlan op = plan_with_obstacles(scn);
    svg = render_svg(scn, op.plan, &op.regions);
  } else {
    const CoveragePlan plan = problem == 1 ? shortest_cover(scn) : reduced_sensing_path(scn);
    svg = render_svg(scn, plan);
  }
  std::ofstream f(out_path);
  if (!f) throw std::invalid_argument("cannot write file: " + out_path);
  f << svg;
  return 0;
}

}  // namespace detail

// Dispatch for the command-line surface. Exit codes: 0 success, 1 usage,
// 2 validation, 3 capacity.
inline int run_command(const std::vector<std::string>& args,
                       std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"sensory coverage path planner"};
  app.require_subcommand(1);

  // plan
  auto* plan_cmd = app.add_subcommand("plan", "plan a coverage path for a scenario file");
  int problem = 1;
  std::string plan_file, plan_out;
  bool with_oracle = false;
  plan_cmd->add_option("--problem", problem, "1: disjoint circles, 2: multi-views, 3: obstacles")
      ->check(CLI::Range(1, 3));
  plan_cmd->add_option("file", plan_file, "scenario file")->required();
  plan_cmd->add_flag("--oracle", with_oracle, "also run the exact oracle and report ratios");
  plan_cmd->add_option("--out", plan_out, "write the report to a file instead of stdout");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "exact desk-scale solvers for a scenario file");
  std::string oracle_file;
  oracle_cmd->add_option("file", oracle_file, "scenario file")->required();

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "approximation-bound calculators");
  int b_n = 0, b_m = 0;
  double b_r = 1.0, b_l_opt = 0.0, b_rho = -1.0;
  bounds_cmd->add_option("--n", b_n, "number of targets")->required();
  bounds_cmd->add_option("--r", b_r, "sensing radius")->required();
  auto* lopt_opt = bounds_cmd->add_option("--l-opt", b_l_opt, "optimal path length");
  bounds_cmd->add_option("--m", b_m, "obstacle vertex count");
  bounds_cmd->add_option("--rho-bar", b_rho, "average base-set region radius");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "ratio table over random instances");
  int trials = 20;
  std::string n_range = "4..7";
  std::uint64_t bench_seed = 1;
  bench_cmd->add_option("--trials", trials, "number of trials");
  bench_cmd->add_option("--n-range", n_range, "target count range A..B");
  bench_cmd->add_option("--seed", bench_seed, "base seed");

  // render
  auto* render_cmd = app.add_subcommand("render", "draw a plan as SVG");
  std::string render_file, render_out;
  int render_problem = 0;
  render_cmd->add_option("file", render_file, "scenario file")->required();
  render_cmd->add_option("--out", render_out, "output SVG path")->required();
  render_cmd->add_option("--problem", render_problem, "planner to use (default: auto)")
      ->check(CLI::Range(1, 3));

  try {
    std::vector<std::string> rargs(args.rbegin(), args.rend());
    app.parse(rargs);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 1;
  }

  try {
    if (plan_cmd->parsed())
      return detail::cmd_plan(problem, plan_file, with_oracle, plan_out, out, err);
    if (oracle_cmd->parsed()) return detail::cmd_oracle(oracle_file, out);
    if (bounds_cmd->parsed()) {
      if (b_rho < 0.0) b_rho = b_r;
      return detail::cmd_bounds(b_n, b_r, b_l_opt, b_m, b_rho, lopt_opt->count() > 0, out);
    }
    if (bench_cmd->parsed()) {
      const auto sep = n_range.find("..");
      if (sep == std::string::npos) throw std::invalid_argument("bench: n-range must be A..B");
      const int lo = std::stoi(n_range.substr(0, sep));
      const int hi = std::stoi(n_range.substr(sep + 2));
      return detail::cmd_bench(trials, lo, hi, bench_seed, out);
    }
    if (render_cmd->parsed())
      return detail::cmd_render(render_file, render_out, render_problem, err);
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace covplan
