#include "fplan/collision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fplan {
namespace {

/// Projects both boxes onto the given axis; true when the intervals are
/// disjoint (a separating axis exists).
bool axis_separates(const Vec2& axis, const OBB& a, const OBB& b) {
  const double centers = std::abs((b.center - a.center).dot(axis));
  auto radius = [&axis](const OBB& box) {
    const Vec2 u(std::cos(box.heading), std::sin(box.heading));
    const Vec2 v(-std::sin(box.heading), std::cos(box.heading));
    return box.half_length * std::abs(u.dot(axis)) + box.half_width * std::abs(v.dot(axis));
  };
  return centers > radius(a) + radius(b);
}

}  // namespace

std::array<Vec2, 4> OBB::corners() const {
  const Vec2 u(std::cos(heading), std::sin(heading));
  const Vec2 v(-std::sin(heading), std::cos(heading));
  const Vec2 du = half_length * u;
  const Vec2 dv = half_width * v;
  return {center + du + dv, center + du - dv, center - du - dv, center - du + dv};
}

bool obb_intersects(const OBB& a, const OBB& b) {
  const Vec2 axes[4] = {
      Vec2(std::cos(a.heading), std::sin(a.heading)),
      Vec2(-std::sin(a.heading), std::cos(a.heading)),
      Vec2(std::cos(b.heading), std::sin(b.heading)),
      Vec2(-std::sin(b.heading), std::cos(b.heading)),
  };
  for (const Vec2& axis : axes) {
    if (axis_separates(axis, a, b)) return false;
  }
  return true;
}

OBB footprint_obb(const CartesianState& state, double length, double width) {
  OBB box;
  box.center = state.position();
  box.half_length = 0.5 * length;
  box.half_width = 0.5 * width;
  box.heading = state.psi;
  return box;
}

OBB sweep_obb(const CartesianState& state1, const CartesianState& state2, double length,
              double width) {
  const double delta_psi = normalize_angle(state2.psi - state1.psi);
  const double mean_heading = state1.psi + 0.5 * delta_psi;
  const Vec2 u(std::cos(mean_heading), std::sin(mean_heading));
  const Vec2 v(-std::sin(mean_heading), std::cos(mean_heading));

  double u_min = std::numeric_limits<double>::infinity();
  double u_max = -u_min;
  double v_min = u_min;
  double v_max = -u_min;
  for (const OBB& box : {footprint_obb(state1, length, width), footprint_obb(state2, length, width)}) {
    for (const Vec2& corner : box.corners()) {
      u_min = std::min(u_min, corner.dot(u));
      u_max = std::max(u_max, corner.dot(u));
      v_min = std::min(v_min, corner.dot(v));
      v_max = std::max(v_max, corner.dot(v));
    }
  }

  // A corner at radius r whose heading turns by delta_psi leaves the chord
  // between its end positions by at most the sagitta r*(1 - cos(delta/2)).
  const double radius = 0.5 * std::hypot(length, width);
  const double slack = radius * (1.0 - std::cos(0.5 * delta_psi));

  OBB box;
  box.center = 0.5 * (u_min + u_max) * u + 0.5 * (v_min + v_max) * v;
  box.half_length = 0.5 * (u_max - u_min) + slack;
  box.half_width = 0.5 * (v_max - v_min) + slack;
  box.heading = mean_heading;
  return box;
}

bool RoadBoundary::contains(const Vec2& point) const {
  for (const auto& polygon : polygons) {
    if (point_in_polygon(point, polygon)) return true;
  }
  return false;
}

RoadBoundary build_road_boundary(const Scenario& scenario) {
  RoadBoundary boundary;
  boundary.polygons.reserve(scenario.lanelets.size());
  for (const Lanelet& lanelet : scenario.lanelets) {
    boundary.polygons.push_back(lanelet.polygon());
  }
  return boundary;
}

bool check_collision(const TrajectorySample& sample, const Scenario& scenario,
                     const VehicleParams& vehicle) {
  const auto& states = sample.states;
  for (std::size_t k = 0; k + 1 < states.size(); ++k) {
    const OBB ego = sweep_obb(states[k], states[k + 1], vehicle.length, vehicle.width);
    const int step = sample.start_step + static_cast<int>(k);
    for (const Obstacle& obstacle : scenario.obstacles) {
      OBB other;
      if (obstacle.kind == ObstacleKind::Static) {
        other = footprint_obb(obstacle.states.front(), obstacle.length, obstacle.width);
      } else {
        other = sweep_obb(obstacle_state_at(obstacle, step, scenario.dt),
                          obstacle_state_at(obstacle, step + 1, scenario.dt), obstacle.length,
                          obstacle.width);
      }
      if (obb_intersects(ego, other)) return false;
    }
  }
  return true;
}

bool check_collision_discrete(const TrajectorySample& sample, const Scenario& scenario,
                              const VehicleParams& vehicle) {
  for (std::size_t k = 0; k < sample.states.size(); ++k) {
    const OBB ego = footprint_obb(sample.states[k], vehicle.length, vehicle.width);
    const int step = sample.start_step + static_cast<int>(k);
    for (const Obstacle& obstacle : scenario.obstacles) {
      const OBB other = footprint_obb(obstacle_state_at(obstacle, step, scenario.dt),
                                      obstacle.length, obstacle.width);
      if (obb_intersects(ego, other)) return false;
    }
  }
  return true;
}

bool check_on_road(const TrajectorySample& sample, const RoadBoundary& boundary,
                   const VehicleParams& vehicle) {
  for (const CartesianState& state : sample.states) {
    for (const Vec2& corner : footprint_obb(state, vehicle.length, vehicle.width).corners()) {
      if (!boundary.contains(corner)) return false;
    }
  }
  return true;
}

}  // namespace fplan
