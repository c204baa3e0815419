#include "fplan/vehicle.hpp"

namespace fplan {

double permissible_acceleration(double v, const VehicleParams& params) {
  if (v > params.v_switch) {
    return params.a_max * params.v_switch / v;
  }
  return params.a_max;
}

}  // namespace fplan
