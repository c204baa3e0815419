#include "fplan/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fplan/errors.hpp"
#include "fplan/parallel.hpp"

namespace fplan {
namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    out.push_back(lo);
    return out;
  }
  for (int i = 0; i < n; ++i) {
    out.push_back(lo + (hi - lo) * i / (n - 1));
  }
  return out;
}

void snap_nearest(std::vector<double>& grid, double value) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (std::abs(grid[i] - value) < std::abs(grid[best] - value)) best = i;
  }
  grid[best] = value;
}

}  // namespace

std::array<int, 3> density_counts(int level) {
  switch (level) {
    case 1: return {2, 5, 5};
    case 2: return {3, 6, 10};
    case 3: return {4, 10, 20};
    case 4: return {5, 20, 35};
    case 5: return {5, 40, 65};
    case 6: return {6, 100, 150};
    default: throw std::invalid_argument("density level must be in 1..6");
  }
}

SamplingConfig config_for_counts(const FrenetState& state, const VehicleParams& vehicle, double T,
                                 double dt, const std::array<int, 3>& counts, double d_min,
                                 double d_max) {
  const auto [nt, nd, nv] = counts;
  SamplingConfig config;
  config.T = T;
  config.dt = dt;
  config.mode = SamplingMode::Velocity;

  for (int k = 1; k <= nt; ++k) {
    const double tau = std::lround(T * k / nt / dt) * dt;
    config.t_values.push_back(tau);
  }

  const double lo = std::min(d_min, state.d);
  const double hi = std::max(d_max, state.d);
  config.d_values = linspace(lo, hi, nd);
  snap_nearest(config.d_values, state.d);

  const double v = std::max(0.0, state.s_dot);
  const double v_lo = std::max(0.0, v - vehicle.a_max * T);
  const double v_hi = v + permissible_acceleration(v, vehicle) * T;
  config.v_values = linspace(v_lo, v_hi, nv);
  snap_nearest(config.v_values, v);
  return config;
}

SamplingConfig default_config_for(const FrenetState& state, const VehicleParams& vehicle, double T,
                                  double dt, int density, double d_min, double d_max) {
  return config_for_counts(state, vehicle, T, dt, density_counts(density), d_min, d_max);
}

SampleSet generate_samples(const FrenetState& current, const SamplingConfig& config,
                           const ReferencePath& path, bool parallel) {
  const auto& terminals =
      config.mode == SamplingMode::Velocity ? config.v_values : config.s_values;
  const std::size_t nd = config.d_values.size();
  const std::size_t nv = terminals.size();
  const std::size_t total = config.t_values.size() * nd * nv;
  const int steps = static_cast<int>(std::llround(config.T / config.dt));

  std::vector<TrajectorySample> slots(total);
  std::vector<char> dropped(total, 0);

  parallel_for(total, parallel, [&](std::size_t idx) {
    TrajectorySample& sample = slots[idx];
    sample.t_index = static_cast<int>(idx / (nd * nv));
    sample.d_index = static_cast<int>((idx / nv) % nd);
    sample.v_index = static_cast<int>(idx % nv);
    sample.mode = config.mode;
    sample.tau = config.t_values[static_cast<std::size_t>(sample.t_index)];
    sample.d_end = config.d_values[static_cast<std::size_t>(sample.d_index)];

    sample.lateral = solve_quintic({current.d, current.d_dot, current.d_ddot},
                                   {sample.d_end, 0.0, 0.0}, sample.tau);
    double s_at_tau = 0.0;
    if (config.mode == SamplingMode::Velocity) {
      sample.v_end = terminals[static_cast<std::size_t>(sample.v_index)];
      sample.longitudinal = solve_quartic({current.s, current.s_dot, current.s_ddot}, sample.v_end,
                                          0.0, sample.tau);
      s_at_tau = sample.longitudinal.eval(sample.tau).value;
    } else {
      sample.s_end = terminals[static_cast<std::size_t>(sample.v_index)];
      sample.v_end = config.s_end_velocity;
      sample.longitudinal_position =
          solve_quintic({current.s, current.s_dot, current.s_ddot},
                        {sample.s_end, config.s_end_velocity, 0.0}, sample.tau);
      s_at_tau = sample.s_end;
    }

    sample.frenet_states.reserve(static_cast<std::size_t>(steps) + 1);
    sample.states.reserve(static_cast<std::size_t>(steps) + 1);
    try {
      for (int k = 0; k <= steps; ++k) {
        const double t = k * config.dt;
        FrenetState fs;
        if (t <= sample.tau + 1e-9) {
          const PolyEval lat = sample.lateral.eval(t);
          fs.d = lat.value;
          fs.d_dot = lat.first;
          fs.d_ddot = lat.second;
          const PolyEval lon = config.mode == SamplingMode::Velocity
                                   ? sample.longitudinal.eval(t)
                                   : sample.longitudinal_position.eval(t);
          fs.s = lon.value;
          fs.s_dot = lon.first;
          fs.s_ddot = lon.second;
        } else {
          fs.d = sample.d_end;
          fs.d_dot = 0.0;
          fs.d_ddot = 0.0;
          fs.s = s_at_tau + sample.v_end * (t - sample.tau);
          fs.s_dot = sample.v_end;
          fs.s_ddot = 0.0;
        }
        sample.frenet_states.push_back(fs);
        sample.states.push_back(path.to_cartesian(fs));
      }
      if (config.mode == SamplingMode::Velocity) {
        sample.s_end = sample.frenet_states.back().s;
      }
    } catch (const PlanningError&) {
      dropped[idx] = 1;
    }
  });

  SampleSet out;
  out.samples.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    if (dropped[i]) {
      ++out.dropped_singular;
    } else {
      out.samples.push_back(std::move(slots[i]));
    }
  }
  return out;
}

}  // namespace fplan
