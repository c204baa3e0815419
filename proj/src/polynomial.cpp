#include "fplan/polynomial.hpp"

#include <stdexcept>

namespace fplan {

PolyEval QuinticPoly::eval(double t) const {
  PolyEval out;
  out.value = ((((c[5] * t + c[4]) * t + c[3]) * t + c[2]) * t + c[1]) * t + c[0];
  out.first = (((5.0 * c[5] * t + 4.0 * c[4]) * t + 3.0 * c[3]) * t + 2.0 * c[2]) * t + c[1];
  out.second = ((20.0 * c[5] * t + 12.0 * c[4]) * t + 6.0 * c[3]) * t + 2.0 * c[2];
  out.third = (60.0 * c[5] * t + 24.0 * c[4]) * t + 6.0 * c[3];
  return out;
}

double QuinticPoly::squared_jerk_integral(double tau) const {
  // jerk(t) = j0 + j1 t + j2 t^2 with j0 = 6 c3, j1 = 24 c4, j2 = 60 c5.
  const double j0 = 6.0 * c[3];
  const double j1 = 24.0 * c[4];
  const double j2 = 60.0 * c[5];
  const double t2 = tau * tau;
  const double t3 = t2 * tau;
  const double t4 = t3 * tau;
  const double t5 = t4 * tau;
  return j0 * j0 * tau + j0 * j1 * t2 + (j1 * j1 + 2.0 * j0 * j2) * t3 / 3.0 +
         j1 * j2 * t4 / 2.0 + j2 * j2 * t5 / 5.0;
}

PolyEval QuarticPoly::eval(double t) const {
  PolyEval out;
  out.value = (((c[4] * t + c[3]) * t + c[2]) * t + c[1]) * t + c[0];
  out.first = ((4.0 * c[4] * t + 3.0 * c[3]) * t + 2.0 * c[2]) * t + c[1];
  out.second = (12.0 * c[4] * t + 6.0 * c[3]) * t + 2.0 * c[2];
  out.third = 24.0 * c[4] * t + 6.0 * c[3];
  return out;
}

QuinticPoly solve_quintic(const BoundaryState& start, const BoundaryState& end,
                          double tau) {
  if (tau <= 0.0) throw std::invalid_argument("solve_quintic: duration must be positive");
  QuinticPoly p;
  p.c[0] = start.position;
  p.c[1] = start.velocity;
  p.c[2] = 0.5 * start.acceleration;

  // Residual end conditions after the start-determined part of the polynomial.
  const double t2 = tau * tau;
  const double t3 = t2 * tau;
  const double t4 = t3 * tau;
  const double t5 = t4 * tau;
  const double dp = end.position - (p.c[0] + p.c[1] * tau + p.c[2] * t2);
  const double dv = end.velocity - (p.c[1] + start.acceleration * tau);
  const double da = end.acceleration - start.acceleration;

  p.c[3] = 10.0 * dp / t3 - 4.0 * dv / t2 + 0.5 * da / tau;
  p.c[4] = -15.0 * dp / t4 + 7.0 * dv / t3 - da / t2;
  p.c[5] = 6.0 * dp / t5 - 3.0 * dv / t4 + 0.5 * da / t3;
  return p;
}

QuarticPoly solve_quartic(const BoundaryState& start, double end_velocity,
                          double end_acceleration, double tau) {
  if (tau <= 0.0) throw std::invalid_argument("solve_quartic: duration must be positive");
  QuarticPoly p;
  p.c[0] = start.position;
  p.c[1] = start.velocity;
  p.c[2] = 0.5 * start.acceleration;

  const double t2 = tau * tau;
  const double t3 = t2 * tau;
  const double dv = end_velocity - (p.c[1] + start.acceleration * tau);
  const double da = end_acceleration - start.acceleration;

  p.c[3] = dv / t2 - da / (3.0 * tau);
  p.c[4] = -0.5 * dv / t3 + 0.25 * da / t2;
  return p;
}

}  // namespace fplan
