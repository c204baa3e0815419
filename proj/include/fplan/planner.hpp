#pragma once

#include <vector>

#include "fplan/collision.hpp"
#include "fplan/cost.hpp"
#include "fplan/sampler.hpp"
#include "fplan/scenario.hpp"

namespace fplan {

enum class PlanCategory { Optimal, EmergencyRisk, EmergencyStop };

struct PlanDiagnostics {
  int generated = 0;
  int dropped_singular = 0;
  int infeasible_acceleration = 0;
  int infeasible_curvature = 0;
  int infeasible_curvature_rate = 0;
  int infeasible_yaw_rate = 0;
  int feasible = 0;
  int collision_checked = 0;
  int collision_failures = 0;
  int boundary_failures = 0;
  double cycle_ms = 0.0;
};

struct PlanResult {
  TrajectorySample chosen;
  PlanCategory category = PlanCategory::Optimal;
  PlanDiagnostics diagnostics;
  double sampling_ms = 0.0;  ///< generation including the back-transform
  double feasibility_ms = 0.0;
  double cost_ms = 0.0;
  std::vector<TrajectorySample> samples;  ///< full set, only when keep_samples
};

struct PlanOptions {
  bool parallel = false;
  int now_step = 0;      ///< scenario step of the cycle start (obstacle lookup)
  double harm = 1.0;     ///< constant harm factor in the risk fallback
  const RoadBoundary* boundary = nullptr;  ///< reused across cycles when set
  bool keep_samples = false;
};

/// Evaluation funnel: generate, feasibility-check, cost and sort (ties by
/// grid index), then walk the ascending list and return the first sample
/// that is collision-free and on-road. Falls back to the minimum-risk sample
/// when none passes, or to the stopping sample when no predictions exist.
/// Throws PlanningFailure when no feasible sample exists at all.
PlanResult plan_cycle(const CartesianState& current, const Scenario& scenario,
                      const ReferencePath& path, const SamplingConfig& config,
                      const CostWeights& weights, const VehicleParams& vehicle,
                      const CostContext& ctx, const PlanOptions& options = {});

/// Risk of a sample: max over steps and obstacles of the per-step footprint
/// collision probability times the constant harm. Returns the feasible sample
/// of minimum risk; ties by total cost, then grid index.
const TrajectorySample* min_risk_trajectory(const std::vector<const TrajectorySample*>& feasible,
                                            const CostContext& ctx, double harm);

/// Stopping fallback: restrict to the d-grid bucket nearest the current
/// lateral offset, then minimum end velocity, ties by shorter tau, then grid
/// index. Falls outward to the next-nearest bucket when a bucket has no
/// feasible sample.
const TrajectorySample* stopping_trajectory(const std::vector<const TrajectorySample*>& feasible,
                                            double current_d, const SamplingConfig& config);

}  // namespace fplan
