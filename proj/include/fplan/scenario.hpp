#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fplan/types.hpp"

namespace fplan {

/// Atomic map element: left/right boundary polylines plus topological links.
/// The center line is derived at load time by resampling both boundaries to a
/// common point count and taking midpoints.
struct Lanelet {
  int id = 0;
  std::vector<Vec2> left;
  std::vector<Vec2> right;
  std::vector<Vec2> center;
  std::vector<int> successors;
  std::optional<int> adjacent_left;
  std::optional<int> adjacent_right;

  double center_length() const;
  /// Closed boundary polygon: left boundary followed by the reversed right.
  std::vector<Vec2> polygon() const;

  bool operator==(const Lanelet&) const = default;
};

enum class ObstacleKind { Static, Dynamic };

struct Obstacle {
  int id = 0;
  ObstacleKind kind = ObstacleKind::Static;
  double length = 0.0;  ///< footprint length [m]
  double width = 0.0;   ///< footprint width [m]
  int first_step = 0;   ///< step index of states.front()
  std::vector<CartesianState> states;

  bool operator==(const Obstacle&) const = default;
};

struct PlanningProblem {
  CartesianState initial;
  std::vector<Vec2> goal_polygon;
  int goal_step_lo = 0;
  int goal_step_hi = 0;
  std::optional<std::pair<double, double>> goal_velocity;

  bool operator==(const PlanningProblem&) const = default;
};

struct Scenario {
  double dt = 0.1;
  std::vector<Lanelet> lanelets;
  std::vector<Obstacle> obstacles;
  PlanningProblem problem;

  const Lanelet* find_lanelet(int id) const;

  bool operator==(const Scenario&) const = default;
};

/// Loads and fully validates a scenario file. Throws ParseError for malformed
/// JSON and ValidationError (naming the first violated invariant and the
/// offending id) otherwise; never returns a partially valid object.
Scenario load_scenario(const std::string& path);

/// Same, from an in-memory JSON string.
Scenario load_scenario_string(const std::string& text);

/// Serializes to the same JSON schema load_scenario reads. Round-trips with
/// exact floating-point values.
std::string serialize_scenario(const Scenario& scenario);

/// State of an obstacle at a step. Dynamic obstacles outside the recorded
/// range are extrapolated at constant velocity and heading; static obstacles
/// return their single state for all steps.
CartesianState obstacle_state_at(const Obstacle& obstacle, int step, double dt);

/// Signed area of a simple polygon (positive for counter-clockwise order).
double polygon_area(const std::vector<Vec2>& polygon);

/// Closed-set point-in-polygon test: points on the boundary count as inside.
bool point_in_polygon(const Vec2& point, const std::vector<Vec2>& polygon);

}  // namespace fplan
