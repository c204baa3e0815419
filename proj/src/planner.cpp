#include "fplan/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "fplan/errors.hpp"
#include "fplan/feasibility.hpp"
#include "fplan/parallel.hpp"

namespace fplan {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

bool index_less(const TrajectorySample& a, const TrajectorySample& b) {
  return a.index_triple() < b.index_triple();
}

double sample_risk(const TrajectorySample& sample, const CostContext& ctx, double harm) {
  double risk = 0.0;
  for (const ObstaclePrediction& prediction : *ctx.predictions) {
    for (std::size_t k = 0; k < sample.states.size(); ++k) {
      const PredictionStep& step =
          prediction.steps[std::min(k, prediction.steps.size() - 1)];
      const double p = footprint_gaussian_mass(sample.states[k], ctx.ego_length, ctx.ego_width,
                                               step.mean, step.covariance);
      risk = std::max(risk, p * harm);
    }
  }
  return risk;
}

}  // namespace

const TrajectorySample* min_risk_trajectory(const std::vector<const TrajectorySample*>& feasible,
                                            const CostContext& ctx, double harm) {
  const TrajectorySample* best = nullptr;
  double best_risk = 0.0;
  for (const TrajectorySample* sample : feasible) {
    const double risk = sample_risk(*sample, ctx, harm);
    if (!best || risk < best_risk - 1e-15 ||
        (risk <= best_risk + 1e-15 &&
         (sample->total_cost < best->total_cost ||
          (sample->total_cost == best->total_cost && index_less(*sample, *best))))) {
      best = sample;
      best_risk = risk;
    }
  }
  return best;
}

const TrajectorySample* stopping_trajectory(const std::vector<const TrajectorySample*>& feasible,
                                            double current_d, const SamplingConfig& config) {
  // d-grid values ordered by distance to the current offset; the paper's rule
  // is the first bucket, the rest generalize it to buckets with no feasible
  // member.
  std::vector<double> buckets = config.d_values;
  std::stable_sort(buckets.begin(), buckets.end(), [current_d](double a, double b) {
    const double da = std::abs(a - current_d);
    const double db = std::abs(b - current_d);
    if (da != db) return da < db;
    return a < b;
  });

  for (double bucket : buckets) {
    const TrajectorySample* best = nullptr;
    for (const TrajectorySample* sample : feasible) {
      if (sample->d_end != bucket) continue;
      if (!best || sample->v_end < best->v_end ||
          (sample->v_end == best->v_end &&
           (sample->tau < best->tau ||
            (sample->tau == best->tau && index_less(*sample, *best))))) {
        best = sample;
      }
    }
    if (best) return best;
  }
  return nullptr;
}

PlanResult plan_cycle(const CartesianState& current, const Scenario& scenario,
                      const ReferencePath& path, const SamplingConfig& config,
                      const CostWeights& weights, const VehicleParams& vehicle,
                      const CostContext& ctx, const PlanOptions& options) {
  const auto cycle_start = Clock::now();
  PlanResult result;

  const FrenetState frenet_current = path.to_frenet(current);

  auto stage_start = Clock::now();
  SampleSet set = generate_samples(frenet_current, config, path, options.parallel);
  for (TrajectorySample& sample : set.samples) sample.start_step = options.now_step;
  result.sampling_ms = ms_since(stage_start);

  result.diagnostics.generated = static_cast<int>(config.expected_count());
  result.diagnostics.dropped_singular = set.dropped_singular;

  stage_start = Clock::now();
  parallel_for(set.samples.size(), options.parallel, [&](std::size_t i) {
    set.samples[i].feasibility = check_feasibility(set.samples[i], vehicle, config.dt);
  });
  result.feasibility_ms = ms_since(stage_start);

  for (const TrajectorySample& sample : set.samples) {
    if (!sample.feasibility.acceleration) ++result.diagnostics.infeasible_acceleration;
    if (!sample.feasibility.curvature) ++result.diagnostics.infeasible_curvature;
    if (!sample.feasibility.curvature_rate) ++result.diagnostics.infeasible_curvature_rate;
    if (!sample.feasibility.yaw_rate) ++result.diagnostics.infeasible_yaw_rate;
    if (sample.feasible()) ++result.diagnostics.feasible;
  }

  stage_start = Clock::now();
  std::vector<char> degenerate(set.samples.size(), 0);
  parallel_for(set.samples.size(), options.parallel, [&](std::size_t i) {
    if (!set.samples[i].feasible()) return;
    try {
      compute_costs(set.samples[i], weights, ctx);
    } catch (const NonFiniteCostError&) {
      degenerate[i] = 1;
    }
  });
  result.cost_ms = ms_since(stage_start);

  std::vector<const TrajectorySample*> ranked;
  ranked.reserve(set.samples.size());
  for (std::size_t i = 0; i < set.samples.size(); ++i) {
    if (set.samples[i].feasible() && !degenerate[i]) ranked.push_back(&set.samples[i]);
    if (degenerate[i]) ++result.diagnostics.dropped_singular;
  }
  std::sort(ranked.begin(), ranked.end(), [](const TrajectorySample* a, const TrajectorySample* b) {
    if (a->total_cost != b->total_cost) return a->total_cost < b->total_cost;
    return index_less(*a, *b);
  });

  if (ranked.empty()) {
    throw PlanningFailure("no feasible trajectory in this cycle");
  }

  const TrajectorySample* chosen = nullptr;
  for (const TrajectorySample* sample : ranked) {
    ++result.diagnostics.collision_checked;
    auto* mutable_sample = const_cast<TrajectorySample*>(sample);
    mutable_sample->collision_checked = true;
    mutable_sample->collision_free = check_collision(*sample, scenario, vehicle);
    if (!mutable_sample->collision_free) {
      ++result.diagnostics.collision_failures;
      continue;
    }
    const bool on_road = options.boundary
                             ? check_on_road(*sample, *options.boundary, vehicle)
                             : check_on_road(*sample, build_road_boundary(scenario), vehicle);
    mutable_sample->on_road = on_road;
    if (!on_road) {
      ++result.diagnostics.boundary_failures;
      continue;
    }
    chosen = sample;
    result.category = PlanCategory::Optimal;
    break;
  }

  if (!chosen && ctx.predictions && !ctx.predictions->empty()) {
    chosen = min_risk_trajectory(ranked, ctx, options.harm);
    result.category = PlanCategory::EmergencyRisk;
  }
  if (!chosen) {
    chosen = stopping_trajectory(ranked, frenet_current.d, config);
    result.category = PlanCategory::EmergencyStop;
  }
  if (!chosen) {
    throw PlanningFailure("no fallback trajectory in this cycle");
  }

  result.chosen = *chosen;
  if (options.keep_samples) {
    result.samples = std::move(set.samples);
  }
  result.diagnostics.cycle_ms = ms_since(cycle_start);
  return result;
}

}  // namespace fplan
