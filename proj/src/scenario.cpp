#include "fplan/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fplan/errors.hpp"

namespace fplan {
namespace {

using nlohmann::json;

std::vector<Vec2> parse_polyline(const json& j) {
  std::vector<Vec2> out;
  out.reserve(j.size());
  for (const auto& p : j) {
    out.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  }
  return out;
}

json dump_polyline(const std::vector<Vec2>& points) {
  json j = json::array();
  for (const auto& p : points) j.push_back({p.x(), p.y()});
  return j;
}

double polyline_length(const std::vector<Vec2>& points) {
  double total = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    total += (points[i] - points[i - 1]).norm();
  }
  return total;
}

/// Uniform arc-length resampling to a fixed point count (endpoints kept).
std::vector<Vec2> resample_polyline(const std::vector<Vec2>& points, std::size_t count) {
  std::vector<double> s(points.size(), 0.0);
  for (std::size_t i = 1; i < points.size(); ++i) {
    s[i] = s[i - 1] + (points[i] - points[i - 1]).norm();
  }
  const double total = s.back();
  std::vector<Vec2> out;
  out.reserve(count);
  std::size_t seg = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const double target = total * static_cast<double>(i) / static_cast<double>(count - 1);
    while (seg + 2 < points.size() && s[seg + 1] < target) ++seg;
    const double span = s[seg + 1] - s[seg];
    const double u = span > 0.0 ? (target - s[seg]) / span : 0.0;
    out.push_back(points[seg] + u * (points[seg + 1] - points[seg]));
  }
  return out;
}

double distance_to_polyline(const Vec2& p, const std::vector<Vec2>& points) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < points.size(); ++i) {
    const Vec2 a = points[i - 1];
    const Vec2 ab = points[i] - a;
    const double len2 = ab.squaredNorm();
    const double u = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, (p - (a + u * ab)).norm());
  }
  return best;
}

/// Derives the center line and checks it stays strictly between the
/// boundaries. Throws on degenerate or crossing boundary geometry.
void build_center_line(Lanelet& lanelet) {
  const std::size_t count = std::max(lanelet.left.size(), lanelet.right.size());
  const std::vector<Vec2> left = resample_polyline(lanelet.left, count);
  const std::vector<Vec2> right = resample_polyline(lanelet.right, count);
  lanelet.center.clear();
  lanelet.center.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    lanelet.center.push_back(0.5 * (left[i] + right[i]));
  }
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t lo = i > 0 ? i - 1 : 0;
    const std::size_t hi = std::min(i + 1, count - 1);
    const std::vector<Vec2> quad{left[lo], left[hi], right[hi], right[lo]};
    const Vec2& c = lanelet.center[i];
    const bool inside_quad = point_in_polygon(c, quad);
    const bool off_boundaries = distance_to_polyline(c, lanelet.left) > 0.0 &&
                                distance_to_polyline(c, lanelet.right) > 0.0;
    if (!inside_quad || !off_boundaries) {
      throw ValidationError("lanelet " + std::to_string(lanelet.id) +
                            ": center line not strictly between boundaries");
    }
  }
}

Lanelet parse_lanelet(const json& j) {
  Lanelet lanelet;
  lanelet.id = j.at("id").get<int>();
  lanelet.left = parse_polyline(j.at("left"));
  lanelet.right = parse_polyline(j.at("right"));
  if (lanelet.left.size() < 2 || lanelet.right.size() < 2) {
    throw ValidationError("lanelet " + std::to_string(lanelet.id) +
                          ": boundaries need at least 2 points");
  }
  if (j.contains("successors")) {
    for (const auto& s : j.at("successors")) lanelet.successors.push_back(s.get<int>());
  }
  if (j.contains("adj_left") && !j.at("adj_left").is_null()) {
    lanelet.adjacent_left = j.at("adj_left").get<int>();
  }
  if (j.contains("adj_right") && !j.at("adj_right").is_null()) {
    lanelet.adjacent_right = j.at("adj_right").get<int>();
  }
  build_center_line(lanelet);
  return lanelet;
}

Obstacle parse_obstacle(const json& j, double dt) {
  Obstacle obstacle;
  obstacle.id = j.at("id").get<int>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "static") {
    obstacle.kind = ObstacleKind::Static;
  } else if (kind == "dynamic") {
    obstacle.kind = ObstacleKind::Dynamic;
  } else {
    throw ValidationError("obstacle " + std::to_string(obstacle.id) +
                          ": kind must be \"static\" or \"dynamic\"");
  }
  obstacle.length = j.at("length").get<double>();
  obstacle.width = j.at("width").get<double>();
  if (!(obstacle.length > 0.0) || !(obstacle.width > 0.0)) {
    throw ValidationError("obstacle " + std::to_string(obstacle.id) +
                          ": footprint dimensions must be positive");
  }
  const json& states = j.at("states");
  if (states.empty()) {
    throw ValidationError("obstacle " + std::to_string(obstacle.id) + ": needs at least one state");
  }
  if (obstacle.kind == ObstacleKind::Static && states.size() != 1) {
    throw ValidationError("obstacle " + std::to_string(obstacle.id) +
                          ": static obstacle must have exactly one state");
  }
  double prev_t = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const json& s = states[i];
    const double t = s.at("t").get<double>();
    if (i == 0) {
      obstacle.first_step = static_cast<int>(std::llround(t / dt));
    } else if (!(t > prev_t) || std::abs((t - prev_t) - dt) > 1e-6) {
      throw ValidationError("obstacle " + std::to_string(obstacle.id) +
                            ": states must advance by dt each entry");
    }
    prev_t = t;
    CartesianState state;
    state.x = s.at("x").get<double>();
    state.y = s.at("y").get<double>();
    state.psi = s.at("psi").get<double>();
    state.v = s.at("v").get<double>();
    obstacle.states.push_back(state);
  }
  return obstacle;
}

CartesianState parse_initial_state(const json& j) {
  CartesianState state;
  state.x = j.at("x").get<double>();
  state.y = j.at("y").get<double>();
  state.psi = j.at("psi").get<double>();
  state.v = j.at("v").get<double>();
  state.a = j.value("a", 0.0);
  state.kappa = j.value("kappa", 0.0);
  return state;
}

Scenario parse_scenario(const json& root) {
  Scenario scenario;
  scenario.dt = root.at("dt").get<double>();
  if (!(scenario.dt > 0.0)) {
    throw ValidationError("dt must be positive");
  }
  for (const auto& j : root.at("lanelets")) {
    scenario.lanelets.push_back(parse_lanelet(j));
  }
  for (const auto& lanelet : scenario.lanelets) {
    const auto count = std::count_if(scenario.lanelets.begin(), scenario.lanelets.end(),
                                     [&](const Lanelet& o) { return o.id == lanelet.id; });
    if (count > 1) {
      throw ValidationError("lanelet " + std::to_string(lanelet.id) + ": duplicate id");
    }
    for (int succ : lanelet.successors) {
      if (!scenario.find_lanelet(succ)) {
        throw ValidationError("lanelet " + std::to_string(lanelet.id) + ": successor " +
                              std::to_string(succ) + " does not exist");
      }
    }
    for (const auto& [label, adj] :
         {std::pair{"adj_left", lanelet.adjacent_left}, {"adj_right", lanelet.adjacent_right}}) {
      if (adj && !scenario.find_lanelet(*adj)) {
        throw ValidationError("lanelet " + std::to_string(lanelet.id) + ": " + label + " " +
                              std::to_string(*adj) + " does not exist");
      }
    }
  }
  if (root.contains("obstacles")) {
    for (const auto& j : root.at("obstacles")) {
      scenario.obstacles.push_back(parse_obstacle(j, scenario.dt));
    }
  }
  for (const auto& obstacle : scenario.obstacles) {
    const auto count = std::count_if(scenario.obstacles.begin(), scenario.obstacles.end(),
                                     [&](const Obstacle& o) { return o.id == obstacle.id; });
    if (count > 1) {
      throw ValidationError("obstacle " + std::to_string(obstacle.id) + ": duplicate id");
    }
  }

  const json& problem = root.at("planning_problem");
  scenario.problem.initial = parse_initial_state(problem.at("initial"));
  scenario.problem.goal_polygon = parse_polyline(problem.at("goal"));
  if (scenario.problem.goal_polygon.size() < 3 ||
      std::abs(polygon_area(scenario.problem.goal_polygon)) <= 0.0) {
    throw ValidationError("planning_problem: goal polygon must have positive area");
  }
  scenario.problem.goal_step_lo = problem.at("goal_steps").at(0).get<int>();
  scenario.problem.goal_step_hi = problem.at("goal_steps").at(1).get<int>();
  if (scenario.problem.goal_step_lo > scenario.problem.goal_step_hi) {
    throw ValidationError("planning_problem: goal_steps interval is reversed");
  }
  if (problem.contains("goal_velocity") && !problem.at("goal_velocity").is_null()) {
    const json& gv = problem.at("goal_velocity");
    scenario.problem.goal_velocity = {gv.at(0).get<double>(), gv.at(1).get<double>()};
    if (scenario.problem.goal_velocity->first > scenario.problem.goal_velocity->second) {
      throw ValidationError("planning_problem: goal_velocity interval is reversed");
    }
  }
  return scenario;
}

}  // namespace

double Lanelet::center_length() const { return polyline_length(center); }

std::vector<Vec2> Lanelet::polygon() const {
  std::vector<Vec2> poly = left;
  poly.insert(poly.end(), right.rbegin(), right.rend());
  return poly;
}

const Lanelet* Scenario::find_lanelet(int id) const {
  for (const auto& lanelet : lanelets) {
    if (lanelet.id == id) return &lanelet;
  }
  return nullptr;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open scenario file: " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_scenario_string(buffer.str());
}

Scenario load_scenario_string(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("scenario is not valid JSON: ") + e.what());
  }
  try {
    return parse_scenario(root);
  } catch (const json::exception& e) {
    throw ParseError(std::string("scenario does not match the schema: ") + e.what());
  }
}

std::string serialize_scenario(const Scenario& scenario) {
  json root;
  root["dt"] = scenario.dt;
  root["lanelets"] = json::array();
  for (const auto& lanelet : scenario.lanelets) {
    json j;
    j["id"] = lanelet.id;
    j["left"] = dump_polyline(lanelet.left);
    j["right"] = dump_polyline(lanelet.right);
    j["successors"] = lanelet.successors;
    if (lanelet.adjacent_left) j["adj_left"] = *lanelet.adjacent_left;
    if (lanelet.adjacent_right) j["adj_right"] = *lanelet.adjacent_right;
    root["lanelets"].push_back(std::move(j));
  }
  root["obstacles"] = json::array();
  for (const auto& obstacle : scenario.obstacles) {
    json j;
    j["id"] = obstacle.id;
    j["kind"] = obstacle.kind == ObstacleKind::Static ? "static" : "dynamic";
    j["length"] = obstacle.length;
    j["width"] = obstacle.width;
    j["states"] = json::array();
    for (std::size_t i = 0; i < obstacle.states.size(); ++i) {
      const CartesianState& s = obstacle.states[i];
      j["states"].push_back({{"t", (obstacle.first_step + static_cast<int>(i)) * scenario.dt},
                             {"x", s.x},
                             {"y", s.y},
                             {"psi", s.psi},
                             {"v", s.v}});
    }
    root["obstacles"].push_back(std::move(j));
  }
  json problem;
  problem["initial"] = {{"x", scenario.problem.initial.x},   {"y", scenario.problem.initial.y},
                        {"psi", scenario.problem.initial.psi}, {"v", scenario.problem.initial.v},
                        {"a", scenario.problem.initial.a},   {"kappa", scenario.problem.initial.kappa}};
  problem["goal"] = dump_polyline(scenario.problem.goal_polygon);
  problem["goal_steps"] = {scenario.problem.goal_step_lo, scenario.problem.goal_step_hi};
  if (scenario.problem.goal_velocity) {
    problem["goal_velocity"] = {scenario.problem.goal_velocity->first,
                                scenario.problem.goal_velocity->second};
  }
  root["planning_problem"] = std::move(problem);
  return root.dump(2);
}

CartesianState obstacle_state_at(const Obstacle& obstacle, int step, double dt) {
  if (obstacle.kind == ObstacleKind::Static) {
    return obstacle.states.front();
  }
  const int last = obstacle.first_step + static_cast<int>(obstacle.states.size()) - 1;
  if (step >= obstacle.first_step && step <= last) {
    return obstacle.states[static_cast<std::size_t>(step - obstacle.first_step)];
  }
  const CartesianState& anchor = step < obstacle.first_step ? obstacle.states.front()
                                                            : obstacle.states.back();
  const int anchor_step = step < obstacle.first_step ? obstacle.first_step : last;
  const double span = (step - anchor_step) * dt;
  CartesianState state = anchor;
  state.x += anchor.v * std::cos(anchor.psi) * span;
  state.y += anchor.v * std::sin(anchor.psi) * span;
  return state;
}

double polygon_area(const std::vector<Vec2>& polygon) {
  double twice = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Vec2& a = polygon[i];
    const Vec2& b = polygon[(i + 1) % polygon.size()];
    twice += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * twice;
}

bool point_in_polygon(const Vec2& point, const std::vector<Vec2>& polygon) {
  bool inside = false;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = polygon[i];
    const Vec2& b = polygon[(i + 1) % n];
    const Vec2 ab = b - a;
    const Vec2 ap = point - a;
    const double len = ab.norm();
    const double cross = ab.x() * ap.y() - ab.y() * ap.x();
    const double along = len > 0.0 ? ap.dot(ab) / len : 0.0;
    if (std::abs(cross) <= 1e-9 * std::max(len, 1.0) && along >= -1e-9 && along <= len + 1e-9) {
      return true;
    }
    if ((a.y() > point.y()) != (b.y() > point.y()) &&
        point.x() < a.x() + (point.y() - a.y()) * ab.x() / ab.y()) {
      inside = !inside;
    }
  }
  return inside;
}

}  // namespace fplan
