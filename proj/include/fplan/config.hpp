#pragma once

#include <string>

#include "fplan/cost_kinds.hpp"
#include "fplan/sim.hpp"
#include "fplan/vehicle.hpp"

namespace fplan {

/// Everything tunable in one place: cost weights, vehicle parameters, and
/// simulation/sampling/prediction/spline knobs. Fields absent from a config
/// file keep their defaults.
struct AppConfig {
  CostWeights weights;
  VehicleParams vehicle;
  SimConfig sim;
};

AppConfig load_config(const std::string& path);
AppConfig load_config_string(const std::string& text);
std::string serialize_config(const AppConfig& config);

}  // namespace fplan
