#pragma once

#include <string>
#include <vector>

#include "fplan/scenario.hpp"
#include "fplan/types.hpp"

namespace fplan {

struct SplineConfig {
  double smoothing_factor = 0.01;   ///< penalty weight per input point
  double ctrl_spacing = 2.0;        ///< B-spline control point spacing [m]
  double sample_spacing = 0.25;     ///< output discretization [m], must be <= 0.5
  double extend_back = 10.0;        ///< straight extension behind the route [m]
  double extend_front = 100.0;      ///< straight extension past the route [m]
  double curvature_rate_bound = 2.0;  ///< regression guard on |dk/ds| [1/m^2]
};

/// Smooth reference line with arc length, heading, curvature, and curvature
/// rate tabulated at <= 0.5 m spacing. Immutable after construction.
struct ReferencePath {
  std::vector<Vec2> points;
  std::vector<double> s;
  std::vector<double> theta;  ///< unwrapped, so linear interpolation is valid
  std::vector<double> kappa;
  std::vector<double> kappa_prime;  ///< d(kappa)/ds

  double length() const { return s.back(); }

  struct Sample {
    Vec2 position;
    double theta = 0.0;
    double kappa = 0.0;
    double kappa_prime = 0.0;
  };
  /// Linear interpolation at arc length query (clamped to [0, length]).
  Sample sample_at(double arc_length) const;

  /// Arc length of the nearest point on the path. Ties between equidistant
  /// candidates resolve to the smaller arc length. Throws ProjectionError
  /// when the nearest point is a path endpoint.
  double project(const Vec2& query) const;

  FrenetState to_frenet(const CartesianState& state) const;
  CartesianState to_cartesian(const FrenetState& fstate) const;

  /// One row per point: s,x,y,theta,kappa.
  std::string dump_csv() const;
};

/// Minimum-length lanelet sequence from the lanelet containing the initial
/// position to one intersecting the goal region. Successor edges cost the
/// entered lanelet's center length; adjacent (lane-change) edges add a fixed
/// 5 m penalty. Ties break to the lexicographically smallest id sequence.
std::vector<int> plan_route(const Scenario& scenario);

/// Concatenates the route's center lines, optionally extends both ends along
/// the boundary tangents, fits a smoothing spline, and resamples.
ReferencePath build_reference_path(const Scenario& scenario, const std::vector<int>& route,
                                   const SplineConfig& config = {});

/// Reference-path construction from a bare polyline (fixtures and tools).
ReferencePath build_reference_path_from_points(const std::vector<Vec2>& points,
                                               const SplineConfig& config = {});

}  // namespace fplan
