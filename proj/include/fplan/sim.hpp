#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fplan/planner.hpp"
#include "fplan/prediction.hpp"
#include "fplan/refpath.hpp"
#include "fplan/scenario.hpp"
#include "fplan/vehicle.hpp"

namespace fplan {

enum class AgentStatus {
  Idle,
  Running,
  GoalReached,
  GoalReachedOutsideTargetTime,
  GoalReachedFasterThanTargetTime,
  MissedTarget,
  TimeLimitReached,
  Error,
  Collision,
};

std::string_view agent_status_name(AgentStatus status);
std::optional<AgentStatus> agent_status_from_name(std::string_view name);

struct SimConfig {
  int replan_every = 1;
  int density = 3;  ///< sampling density level 1..6
  std::optional<std::array<int, 3>> grid_override;  ///< explicit (|t|,|d|,|v|)
  double T = 3.0;
  double target_velocity = 10.0;  ///< v_ref when the problem has no goal velocity
  int grace_steps = 80;           ///< allowance past goal_step_hi before timeout
  double d_min = -3.5;
  double d_max = 3.5;
  double harm = 1.0;
  bool use_predictions = true;
  bool parallel = false;
  SplineConfig spline;
  PredictionConfig prediction;
};

struct StepRecord {
  int step = 0;
  CartesianState state;
  bool replanned = false;
  PlanCategory category = PlanCategory::Optimal;
  double total_cost = 0.0;
  int generated = 0;
  int feasible = 0;
  double cycle_ms = 0.0;
  double sampling_ms = 0.0;
  double feasibility_ms = 0.0;
  double cost_ms = 0.0;
};

struct RunLog {
  AgentStatus status = AgentStatus::Idle;
  std::vector<StepRecord> steps;
  int collision_step = -1;
  int goal_step = -1;
  bool overtook = false;          ///< passed every dynamic obstacle that started ahead
  double min_clearance = 0.0;     ///< smallest center distance to any obstacle
  std::string message;
};

/// Called after each planning cycle; receives the full sample set (the
/// PlanResult keeps it when a hook is installed).
using CycleHook = std::function<void(int step, const PlanResult& result)>;

/// Closed loop with perfect tracking: plan, execute replan_every steps of the
/// chosen sample verbatim, classify each executed step (collision first, then
/// goal with time classification, missed target, time limit). Planning errors
/// become AgentStatus::Error in the log.
RunLog run_scenario(const Scenario& scenario, const CostWeights& weights, const SimConfig& config,
                    const VehicleParams& vehicle, int replan_every = 1,
                    const CycleHook& hook = nullptr);

std::string runlog_to_json(const RunLog& log);

struct StudyRun {
  double w_velocity = 0.0;
  double w_dist_obstacle = 0.0;
  double w_collision_prob = 0.0;
  bool overtook = false;
  double min_clearance = 0.0;
  int steps = 0;
  AgentStatus status = AgentStatus::Idle;
  double wall_ms = 0.0;  ///< wall time of this run, measured inside its worker
};

struct StudyReport {
  std::vector<StudyRun> runs;  ///< 18 grid rows plus the degenerate-weights row
};

/// Weight-variation study on the overtaking fixture: velocity x
/// distance-to-obstacle x collision-probability grid, plus one run with both
/// velocity and collision-probability weights disabled.
StudyReport overtaking_study(const Scenario& scenario, const CostWeights& base,
                             const SimConfig& config, const VehicleParams& vehicle);

std::string study_to_csv(const StudyReport& report);

}  // namespace fplan
