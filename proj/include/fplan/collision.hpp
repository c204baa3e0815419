#pragma once

#include <array>
#include <vector>

#include "fplan/sampler.hpp"
#include "fplan/scenario.hpp"
#include "fplan/types.hpp"
#include "fplan/vehicle.hpp"

namespace fplan {

struct OBB {
  Vec2 center = Vec2::Zero();
  double half_length = 0.0;
  double half_width = 0.0;
  double heading = 0.0;

  std::array<Vec2, 4> corners() const;
};

/// Separating-axis test over both boxes' axes; closed sets, so touching
/// boxes intersect.
bool obb_intersects(const OBB& a, const OBB& b);

OBB footprint_obb(const CartesianState& state, double length, double width);

/// One box covering the footprint at both states: oriented along the mean
/// heading, sized to contain all eight corners, then inflated by the sagitta
/// of the largest corner arc so any pose on the interpolated motion between
/// the states stays inside.
OBB sweep_obb(const CartesianState& state1, const CartesianState& state2, double length,
              double width);

struct RoadBoundary {
  std::vector<std::vector<Vec2>> polygons;  ///< one closed polygon per lanelet

  /// Union membership, closed sets (boundary points count as inside).
  bool contains(const Vec2& point) const;
};

RoadBoundary build_road_boundary(const Scenario& scenario);

/// Continuous check: for every consecutive ego state pair the swept ego box
/// is tested against every obstacle's swept box over the same step interval
/// (scripted states, extrapolated past the recording). True means clear.
bool check_collision(const TrajectorySample& sample, const Scenario& scenario,
                     const VehicleParams& vehicle);

/// Discrete variant (per-step footprints only); kept for oracles and the
/// executed-state check in the simulator.
bool check_collision_discrete(const TrajectorySample& sample, const Scenario& scenario,
                              const VehicleParams& vehicle);

/// True iff all four footprint corners at every step lie on the road.
bool check_on_road(const TrajectorySample& sample, const RoadBoundary& boundary,
                   const VehicleParams& vehicle);

}  // namespace fplan
