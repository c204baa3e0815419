#pragma once

#include "fplan/sampler.hpp"
#include "fplan/vehicle.hpp"

namespace fplan {

/// Kinematic single-track checks over every state of the sample:
/// longitudinal acceleration within [-a_max, a_permissible(v)], curvature
/// within tan(delta_max)/wheelbase, curvature rate and yaw rate (forward
/// differences over dt) within their limits. The yaw-rate bound scales with
/// the pointwise speed.
FeasibilityFlags check_feasibility(const TrajectorySample& sample, const VehicleParams& params,
                                   double dt);

}  // namespace fplan
