#pragma once

#include <array>

namespace fplan {

/// Value and first three derivatives of a polynomial at one instant.
struct PolyEval {
  double value = 0.0;
  double first = 0.0;
  double second = 0.0;
  double third = 0.0;
};

/// Position, velocity and acceleration at a trajectory endpoint.
struct BoundaryState {
  double position = 0.0;
  double velocity = 0.0;
  double acceleration = 0.0;
};

/// Fifth-order polynomial c0 + c1 t + c2 t^2 + c3 t^3 + c4 t^4 + c5 t^5.
struct QuinticPoly {
  std::array<double, 6> c{};

  PolyEval eval(double t) const;

  /// Exact integral of the squared third derivative over [0, tau].
  double squared_jerk_integral(double tau) const;
};

/// Fourth-order polynomial c0 + c1 t + c2 t^2 + c3 t^3 + c4 t^4.
struct QuarticPoly {
  std::array<double, 5> c{};

  PolyEval eval(double t) const;
};

/// Solves the unique quintic connecting the full start and end states over a
/// duration tau > 0. Throws std::invalid_argument for tau <= 0.
QuinticPoly solve_quintic(const BoundaryState& start, const BoundaryState& end,
                          double tau);

/// Solves the quartic matching the full start state plus the end velocity and
/// acceleration; the end position is left free. Throws std::invalid_argument
/// for tau <= 0.
QuarticPoly solve_quartic(const BoundaryState& start, double end_velocity,
                          double end_acceleration, double tau);

}  // namespace fplan
