#include "fplan/feasibility.hpp"

#include <cmath>

namespace fplan {

FeasibilityFlags check_feasibility(const TrajectorySample& sample, const VehicleParams& params,
                                   double dt) {
  FeasibilityFlags flags{true, true, true, true};
  const double kappa_max = params.kappa_max();
  const auto& states = sample.states;

  for (std::size_t k = 0; k < states.size(); ++k) {
    const CartesianState& state = states[k];
    const double a_upper = permissible_acceleration(std::max(0.0, state.v), params);
    if (state.a < -params.a_max || state.a > a_upper) flags.acceleration = false;
    if (std::abs(state.kappa) > kappa_max) flags.curvature = false;
    if (k + 1 < states.size()) {
      const double kappa_dot = (states[k + 1].kappa - state.kappa) / dt;
      if (std::abs(kappa_dot) > params.kappa_dot_max) flags.curvature_rate = false;
      const double psi_dot = normalize_angle(states[k + 1].psi - state.psi) / dt;
      if (std::abs(psi_dot) > kappa_max * state.v) flags.yaw_rate = false;
    }
  }
  return flags;
}

}  // namespace fplan
