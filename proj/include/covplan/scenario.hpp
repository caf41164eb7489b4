#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "covplan/geometry.hpp"

namespace covplan {

// A coverage problem instance: point targets with a common sensing radius, a
// start target (path begins exactly there) and an end target (path ends within
// range of it), plus optional polygonal obstacles.
struct Scenario {
  std::vector<Point2> targets;
  double r = 1.0;
  int start_index = 0;
  int end_index = -1;  // -1 means last target
  std::vector<Polygon> obstacles;
  std::optional<std::uint64_t> seed;

  int n() const { return static_cast<int>(targets.size()); }
  int start() const { return start_index; }
  int end() const { return end_index < 0 ? n() - 1 : end_index; }

  void validate() const {
    if (n() < 2) throw std::invalid_argument("scenario: need at least 2 targets");
    if (!(r > 0.0)) throw std::invalid_argument("scenario: sensing radius must be positive");
    for (Point2 t : targets)
      if (!finite(t)) throw std::invalid_argument("scenario: target not finite");
    if (start() < 0 || start() >= n() || end() < 0 || end() >= n())
      throw std::invalid_argument("scenario: start/end index out of range");
    if (start() == end()) throw std::invalid_argument("scenario: start and end must differ");
    for (const Polygon& poly : obstacles) {
      validate_polygon(poly);
      for (Point2 t : targets)
        if (strictly_inside(poly, t))
          throw std::invalid_argument("scenario: target inside obstacle");
    }
  }
};

// Result of a planner run: a path polyline starting at the start target, the
// sensing nodes where observations happen, and which node observes each target.
struct CoveragePlan {
  std::vector<Point2> nodes;
  std::vector<Point2> path;
  double length = 0.0;
  std::vector<int> order;       // target visitation order
  std::vector<int> assignment;  // target index -> index into nodes
};

}  // namespace covplan
