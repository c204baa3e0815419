#pragma once

// Shared in-memory scenario builders for the unit tests. Everything returns
// JSON text so the tests exercise the same load/validate path as real files.

#include <json.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "fplan/refpath.hpp"
#include "fplan/scenario.hpp"

namespace fixtures {

inline fplan::ReferencePath straight_ref(double length = 100.0, double extend_back = 10.0) {
  std::vector<fplan::Vec2> pts;
  for (int i = 0; i * 2.0 <= length; ++i) pts.emplace_back(2.0 * i, 0.0);
  fplan::SplineConfig cfg;
  cfg.extend_back = extend_back;
  return fplan::build_reference_path_from_points(pts, cfg);
}

inline fplan::ReferencePath arc_ref(double radius = 50.0) {
  std::vector<fplan::Vec2> pts;
  for (int i = 0; i <= 100; ++i) {
    const double a = (M_PI / 2) * i / 100.0;
    pts.emplace_back(radius * std::sin(a), radius * (1.0 - std::cos(a)));
  }
  return fplan::build_reference_path_from_points(pts, {});
}

using nlohmann::json;

struct LaneSpec {
  int id = 1;
  double x0 = 0.0;
  double x1 = 100.0;
  double y = 0.0;  // lane center
  double width = 3.5;
  double spacing = 10.0;
  std::vector<int> successors;
  int adj_left = 0;   // 0 = absent
  int adj_right = 0;  // 0 = absent
};

inline json straight_lanelet(const LaneSpec& spec) {
  json left = json::array();
  json right = json::array();
  const int n = std::max(2, static_cast<int>(std::lround((spec.x1 - spec.x0) / spec.spacing)) + 1);
  for (int i = 0; i < n; ++i) {
    const double x = spec.x0 + (spec.x1 - spec.x0) * i / (n - 1);
    left.push_back({x, spec.y + 0.5 * spec.width});
    right.push_back({x, spec.y - 0.5 * spec.width});
  }
  json out = {{"id", spec.id}, {"left", left}, {"right", right},
              {"successors", spec.successors}};
  if (spec.adj_left != 0) out["adj_left"] = spec.adj_left;
  if (spec.adj_right != 0) out["adj_right"] = spec.adj_right;
  return out;
}

// Lanelet along a circular arc, boundaries at radius r -+ width/2 around
// (cx, cy), spanning [a0, a1] in angle.
inline json arc_lanelet(int id, double cx, double cy, double r, double a0, double a1,
                        double width, int points, std::vector<int> successors = {}) {
  json left = json::array();
  json right = json::array();
  for (int i = 0; i < points; ++i) {
    const double a = a0 + (a1 - a0) * i / (points - 1);
    const double co = std::cos(a), si = std::sin(a);
    left.push_back({cx + (r - 0.5 * width) * co, cy + (r - 0.5 * width) * si});
    right.push_back({cx + (r + 0.5 * width) * co, cy + (r + 0.5 * width) * si});
  }
  return {{"id", id}, {"left", left}, {"right", right}, {"successors", successors}};
}

inline json dynamic_obstacle(int id, double x, double y, double psi, double v,
                             int steps, double dt, double length = 4.5,
                             double width = 2.0) {
  json states = json::array();
  for (int k = 0; k < steps; ++k) {
    const double t = k * dt;
    states.push_back({{"t", t},
                      {"x", x + v * t * std::cos(psi)},
                      {"y", y + v * t * std::sin(psi)},
                      {"psi", psi},
                      {"v", v}});
  }
  return {{"id", id}, {"kind", "dynamic"}, {"length", length}, {"width", width},
          {"states", states}};
}

inline json static_obstacle(int id, double x, double y, double psi = 0.0,
                            double length = 4.5, double width = 2.0) {
  return {{"id", id}, {"kind", "static"}, {"length", length}, {"width", width},
          {"states", {{{"t", 0.0}, {"x", x}, {"y", y}, {"psi", psi}, {"v", 0.0}}}}};
}

inline json goal_box(double x0, double x1, double y0, double y1) {
  return json::array({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

struct ScenarioSpec {
  double dt = 0.1;
  std::vector<json> lanelets;
  std::vector<json> obstacles;
  double ego_x = 0.0, ego_y = 0.0, ego_psi = 0.0, ego_v = 10.0;
  json goal;
  int goal_lo = 0, goal_hi = 200;
  bool has_goal_velocity = false;
  double goal_v_lo = 0.0, goal_v_hi = 0.0;
};

inline json scenario_json(const ScenarioSpec& spec) {
  json doc;
  doc["dt"] = spec.dt;
  doc["lanelets"] = spec.lanelets;
  doc["obstacles"] = spec.obstacles;
  doc["planning_problem"] = {
      {"initial",
       {{"x", spec.ego_x}, {"y", spec.ego_y}, {"psi", spec.ego_psi}, {"v", spec.ego_v}}},
      {"goal", spec.goal.is_null() ? goal_box(90.0, 100.0, -1.75, 1.75) : spec.goal},
      {"goal_steps", {spec.goal_lo, spec.goal_hi}}};
  if (spec.has_goal_velocity)
    doc["planning_problem"]["goal_velocity"] = {spec.goal_v_lo, spec.goal_v_hi};
  return doc;
}

// Single 100 m straight lane, one slower lead vehicle, goal box at the end.
inline std::string two_lane_straight_road() {
  ScenarioSpec spec;
  spec.lanelets = {straight_lanelet({.id = 1, .adj_left = 2}),
                   straight_lanelet({.id = 2, .y = 3.5, .adj_right = 1})};
  spec.obstacles = {dynamic_obstacle(10, 40.0, 0.0, 0.0, 5.0, 30, spec.dt)};
  spec.ego_v = 10.0;
  return scenario_json(spec).dump();
}

inline fplan::Scenario straight_scenario(double length = 100.0, int lanes = 1,
                                         double ego_v = 10.0,
                                         std::vector<json> obstacles = {}) {
  ScenarioSpec spec;
  for (int i = 0; i < lanes; ++i) {
    LaneSpec lane{.id = i + 1, .x1 = length, .y = 3.5 * i};
    if (i > 0) lane.adj_right = i;
    if (i + 1 < lanes) lane.adj_left = i + 2;
    spec.lanelets.push_back(straight_lanelet(lane));
  }
  spec.obstacles = std::move(obstacles);
  spec.ego_v = ego_v;
  spec.goal = goal_box(length - 10.0, length, -1.75, 1.75);
  spec.goal_hi = 400;
  return fplan::load_scenario_string(scenario_json(spec).dump());
}

}  // namespace fixtures
