#pragma once

#include <cmath>

namespace fplan {

struct VehicleParams {
  double length = 4.5;          ///< footprint length [m]
  double width = 2.0;           ///< footprint width [m]
  double wheelbase = 2.9;       ///< axle distance L [m]
  double delta_max = 0.7;       ///< steering angle limit [rad]
  double a_max = 8.0;           ///< acceleration magnitude limit [m/s^2]
  double v_switch = 10.0;       ///< speed where engine power caps acceleration [m/s]
  double kappa_dot_max = 0.4;   ///< curvature rate limit [1/(m s)]

  double kappa_max() const { return std::tan(delta_max) / wheelbase; }

  bool operator==(const VehicleParams&) const = default;
};

/// Speed-dependent acceleration limit: full a_max up to v_switch, then
/// hyperbolic falloff a_max * v_switch / v (constant engine power).
double permissible_acceleration(double v, const VehicleParams& params);

struct FeasibilityFlags {
  bool acceleration = false;
  bool curvature = false;
  bool curvature_rate = false;
  bool yaw_rate = false;

  bool all() const { return acceleration && curvature && curvature_rate && yaw_rate; }

  bool operator==(const FeasibilityFlags&) const = default;
};

}  // namespace fplan
