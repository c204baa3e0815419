#pragma once

#include <array>
#include <vector>

#include "fplan/cost_kinds.hpp"
#include "fplan/polynomial.hpp"
#include "fplan/refpath.hpp"
#include "fplan/types.hpp"
#include "fplan/vehicle.hpp"

namespace fplan {

enum class SamplingMode { Velocity, Position };

struct SamplingConfig {
  std::vector<double> t_values;  ///< primitive horizons, each in (0, T]
  std::vector<double> d_values;  ///< terminal lateral offsets, includes d_curr
  std::vector<double> v_values;  ///< terminal velocities (velocity mode)
  std::vector<double> s_values;  ///< terminal positions (position mode)
  SamplingMode mode = SamplingMode::Velocity;
  double s_end_velocity = 0.0;  ///< imposed terminal velocity in position mode
  double T = 3.0;               ///< fixed planning horizon [s]
  double dt = 0.1;

  std::size_t expected_count() const {
    return t_values.size() * d_values.size() *
           (mode == SamplingMode::Velocity ? v_values.size() : s_values.size());
  }
};

/// One candidate: a lateral quintic crossed with a longitudinal primitive,
/// held at its terminal conditions from tau to the shared horizon T, and
/// back-transformed to Cartesian states at every step.
struct TrajectorySample {
  QuinticPoly lateral;
  QuarticPoly longitudinal;          ///< velocity mode
  QuinticPoly longitudinal_position; ///< position mode
  SamplingMode mode = SamplingMode::Velocity;
  double tau = 0.0;
  double d_end = 0.0;
  double v_end = 0.0;
  double s_end = 0.0;
  int t_index = 0;
  int d_index = 0;
  int v_index = 0;  ///< velocity- or position-grid index, depending on mode
  int start_step = 0;  ///< scenario step of states[0]

  std::vector<FrenetState> frenet_states;
  std::vector<CartesianState> states;

  FeasibilityFlags feasibility;
  std::array<double, kCostKindCount> costs{};
  double total_cost = 0.0;
  bool costed = false;
  bool collision_checked = false;
  bool collision_free = false;
  bool on_road = false;

  bool feasible() const { return feasibility.all(); }
  std::array<int, 3> index_triple() const { return {t_index, d_index, v_index}; }
};

struct SampleSet {
  std::vector<TrajectorySample> samples;  ///< ordered by (t, d, v) indices
  int dropped_singular = 0;  ///< candidates discarded for leaving the valid tube
};

/// Builds the full cross product of the sampling grids. Samples whose
/// back-transform hits the curvilinear singularity or runs off the path are
/// dropped and counted. Output order is deterministic in both execution modes.
SampleSet generate_samples(const FrenetState& current, const SamplingConfig& config,
                           const ReferencePath& path, bool parallel = false);

/// Grid sizes (|t|, |d|, |v|) for density levels 1..6; products follow the
/// 50/180/800/3500/13000/90000 ladder.
std::array<int, 3> density_counts(int level);

/// Velocity-mode grid around the current state: speeds within the reachable
/// band [v - a_max*T, v + a_perm*T] clamped at zero, lateral offsets spanning
/// [d_min, d_max]; both grids snap their nearest point onto the current state.
SamplingConfig config_for_counts(const FrenetState& state, const VehicleParams& vehicle, double T,
                                 double dt, const std::array<int, 3>& counts, double d_min = -3.5,
                                 double d_max = 3.5);

/// Same, with counts taken from the density ladder.
SamplingConfig default_config_for(const FrenetState& state, const VehicleParams& vehicle, double T,
                                  double dt, int density, double d_min = -3.5, double d_max = 3.5);

}  // namespace fplan
