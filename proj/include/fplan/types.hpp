#pragma once

#include <Eigen/Core>
#include <cmath>

namespace fplan {

using Vec2 = Eigen::Vector2d;

/// Pose, velocity, longitudinal acceleration and path curvature of a vehicle
/// at one time instant, in world coordinates.
struct CartesianState {
  double x = 0.0;      ///< [m]
  double y = 0.0;      ///< [m]
  double psi = 0.0;    ///< heading [rad]
  double v = 0.0;      ///< speed along heading [m/s]
  double a = 0.0;      ///< longitudinal acceleration [m/s^2]
  double kappa = 0.0;  ///< curvature of the driven path [1/m]

  Vec2 position() const { return {x, y}; }

  bool operator==(const CartesianState&) const = default;
};

/// Longitudinal and lateral position relative to a reference path, with time
/// derivatives. d is positive to the left of the path.
struct FrenetState {
  double s = 0.0;       ///< arc length along the path [m]
  double s_dot = 0.0;   ///< [m/s]
  double s_ddot = 0.0;  ///< [m/s^2]
  double d = 0.0;       ///< signed lateral offset [m]
  double d_dot = 0.0;   ///< [m/s]
  double d_ddot = 0.0;  ///< [m/s^2]

  bool operator==(const FrenetState&) const = default;
};

/// Maps an angle to [-pi, pi).
inline double normalize_angle(double a) {
  a = std::fmod(a + M_PI, 2.0 * M_PI);
  if (a < 0.0) a += 2.0 * M_PI;
  return a - M_PI;
}

}  // namespace fplan
