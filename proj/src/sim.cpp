#include "fplan/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "fplan/collision.hpp"
#include "fplan/errors.hpp"
#include "fplan/parallel.hpp"

namespace fplan {
namespace {

constexpr std::array<std::string_view, 9> kStatusNames = {
    "Idle",          "Running",
    "GoalReached",   "GoalReachedOutsideTargetTime",
    "GoalReachedFasterThanTargetTime",
    "MissedTarget",  "TimeLimitReached",
    "Error",         "Collision",
};

const char* category_name(PlanCategory category) {
  switch (category) {
    case PlanCategory::Optimal: return "optimal";
    case PlanCategory::EmergencyRisk: return "emergency_risk";
    case PlanCategory::EmergencyStop: return "emergency_stop";
  }
  return "optimal";
}

}  // namespace

std::string_view agent_status_name(AgentStatus status) {
  return kStatusNames[static_cast<std::size_t>(status)];
}

std::optional<AgentStatus> agent_status_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kStatusNames.size(); ++i) {
    if (kStatusNames[i] == name) return static_cast<AgentStatus>(i);
  }
  return std::nullopt;
}

RunLog run_scenario(const Scenario& scenario, const CostWeights& weights, const SimConfig& config,
                    const VehicleParams& vehicle, int replan_every, const CycleHook& hook) {
  RunLog log;
  log.status = AgentStatus::Running;
  log.min_clearance = std::numeric_limits<double>::infinity();

  ReferencePath path;
  try {
    const std::vector<int> route = plan_route(scenario);
    path = build_reference_path(scenario, route, config.spline);
  } catch (const PlanningError& e) {
    log.status = AgentStatus::Error;
    log.message = e.what();
    return log;
  }

  const RoadBoundary boundary = build_road_boundary(scenario);
  const double dt = scenario.dt;
  const int horizon_steps = static_cast<int>(std::llround(config.T / dt));
  const int time_limit = scenario.problem.goal_step_hi + config.grace_steps;

  // Largest goal-vertex arc length; passing it without satisfying the goal
  // predicate means the target was missed.
  double goal_s_max = std::numeric_limits<double>::infinity();
  {
    double s_max = -std::numeric_limits<double>::infinity();
    for (const Vec2& vertex : scenario.problem.goal_polygon) {
      try {
        s_max = std::max(s_max, path.project(vertex));
      } catch (const PlanningError&) {
      }
    }
    if (std::isfinite(s_max)) goal_s_max = s_max;
  }

  // Dynamic obstacles starting ahead of the ego; all must be passed for the
  // run to count as an overtake.
  struct Tracked {
    const Obstacle* obstacle;
    bool passed = false;
  };
  std::vector<Tracked> tracked;
  {
    double s_ego0 = 0.0;
    bool have_ego0 = false;
    try {
      s_ego0 = path.project(scenario.problem.initial.position());
      have_ego0 = true;
    } catch (const PlanningError&) {
    }
    if (have_ego0) {
      for (const Obstacle& obstacle : scenario.obstacles) {
        if (obstacle.kind != ObstacleKind::Dynamic) continue;
        try {
          if (path.project(obstacle_state_at(obstacle, 0, dt).position()) > s_ego0) {
            tracked.push_back({&obstacle});
          }
        } catch (const PlanningError&) {
        }
      }
    }
  }

  const auto goal_satisfied = [&](const CartesianState& state) {
    if (!point_in_polygon(state.position(), scenario.problem.goal_polygon)) return false;
    if (scenario.problem.goal_velocity) {
      return state.v >= scenario.problem.goal_velocity->first - 1e-9 &&
             state.v <= scenario.problem.goal_velocity->second + 1e-9;
    }
    return true;
  };

  // Terminal classification for one executed step; collision outranks goal.
  const auto classify = [&](int step, const CartesianState& state) -> std::optional<AgentStatus> {
    const OBB ego = footprint_obb(state, vehicle.length, vehicle.width);
    for (const Obstacle& obstacle : scenario.obstacles) {
      const OBB other = footprint_obb(obstacle_state_at(obstacle, step, dt), obstacle.length,
                                      obstacle.width);
      if (obb_intersects(ego, other)) {
        log.collision_step = step;
        return AgentStatus::Collision;
      }
    }
    if (goal_satisfied(state)) {
      log.goal_step = step;
      if (step < scenario.problem.goal_step_lo) return AgentStatus::GoalReachedFasterThanTargetTime;
      if (step <= scenario.problem.goal_step_hi) return AgentStatus::GoalReached;
      return AgentStatus::GoalReachedOutsideTargetTime;
    }
    if (std::isfinite(goal_s_max)) {
      try {
        if (path.project(state.position()) > goal_s_max + 0.5 * vehicle.length) {
          return AgentStatus::MissedTarget;
        }
      } catch (const PlanningError&) {
      }
    }
    if (step >= time_limit) return AgentStatus::TimeLimitReached;
    return std::nullopt;
  };

  const auto observe = [&](int step, const CartesianState& state) {
    for (const Obstacle& obstacle : scenario.obstacles) {
      const CartesianState obs = obstacle_state_at(obstacle, step, dt);
      log.min_clearance = std::min(log.min_clearance, (state.position() - obs.position()).norm());
    }
    for (Tracked& t : tracked) {
      if (t.passed) continue;
      try {
        const double s_ego = path.project(state.position());
        const double s_obs = path.project(obstacle_state_at(*t.obstacle, step, dt).position());
        if (s_ego - s_obs > 0.5 * (vehicle.length + t.obstacle->length)) t.passed = true;
      } catch (const PlanningError&) {
      }
    }
  };

  CartesianState current = scenario.problem.initial;
  int step = 0;
  TrajectorySample pending;
  int executed_of_pending = 0;
  bool have_pending = false;

  while (true) {
    observe(step, current);

    StepRecord record;
    record.step = step;
    record.state = current;

    if (const auto terminal = classify(step, current)) {
      log.steps.push_back(record);
      log.status = *terminal;
      break;
    }

    if (!have_pending || executed_of_pending >= replan_every) {
      try {
        const FrenetState frenet_current = path.to_frenet(current);
        const SamplingConfig sampling =
            config.grid_override
                ? config_for_counts(frenet_current, vehicle, config.T, dt, *config.grid_override,
                                    config.d_min, config.d_max)
                : default_config_for(frenet_current, vehicle, config.T, dt, config.density,
                                     config.d_min, config.d_max);
        std::vector<ObstaclePrediction> predictions;
        if (config.use_predictions) {
          predictions = predict_all(scenario, step, horizon_steps, config.prediction);
        }
        CostContext ctx;
        ctx.v_ref = scenario.problem.goal_velocity
                        ? 0.5 * (scenario.problem.goal_velocity->first +
                                 scenario.problem.goal_velocity->second)
                        : config.target_velocity;
        ctx.predictions = &predictions;
        ctx.T = config.T;
        ctx.dt = dt;
        ctx.ego_length = vehicle.length;
        ctx.ego_width = vehicle.width;

        PlanOptions options;
        options.parallel = config.parallel;
        options.now_step = step;
        options.harm = config.harm;
        options.boundary = &boundary;
        options.keep_samples = static_cast<bool>(hook);

        PlanResult result =
            plan_cycle(current, scenario, path, sampling, weights, vehicle, ctx, options);
        if (hook) hook(step, result);

        pending = std::move(result.chosen);
        executed_of_pending = 0;
        have_pending = true;

        record.replanned = true;
        record.category = result.category;
        record.total_cost = pending.total_cost;
        record.generated = result.diagnostics.generated;
        record.feasible = result.diagnostics.feasible;
        record.cycle_ms = result.diagnostics.cycle_ms;
        record.sampling_ms = result.sampling_ms;
        record.feasibility_ms = result.feasibility_ms;
        record.cost_ms = result.cost_ms;
      } catch (const PlanningError& e) {
        log.steps.push_back(record);
        log.status = AgentStatus::Error;
        log.message = e.what();
        break;
      }
    }

    log.steps.push_back(record);
    ++executed_of_pending;
    current = pending.states[static_cast<std::size_t>(executed_of_pending)];
    ++step;
  }

  log.overtook = !tracked.empty() &&
                 std::all_of(tracked.begin(), tracked.end(), [](const Tracked& t) { return t.passed; });
  if (!std::isfinite(log.min_clearance)) log.min_clearance = 0.0;
  return log;
}

std::string runlog_to_json(const RunLog& log) {
  nlohmann::json root;
  root["status"] = std::string(agent_status_name(log.status));
  root["collision_step"] = log.collision_step;
  root["goal_step"] = log.goal_step;
  root["overtook"] = log.overtook;
  root["min_clearance"] = log.min_clearance;
  root["message"] = log.message;
  root["steps"] = nlohmann::json::array();
  for (const StepRecord& record : log.steps) {
    nlohmann::json j;
    j["step"] = record.step;
    j["x"] = record.state.x;
    j["y"] = record.state.y;
    j["psi"] = record.state.psi;
    j["v"] = record.state.v;
    j["a"] = record.state.a;
    j["replanned"] = record.replanned;
    if (record.replanned) {
      j["category"] = category_name(record.category);
      j["total_cost"] = record.total_cost;
      j["generated"] = record.generated;
      j["feasible"] = record.feasible;
      j["cycle_ms"] = record.cycle_ms;
      j["sampling_ms"] = record.sampling_ms;
      j["feasibility_ms"] = record.feasibility_ms;
      j["cost_ms"] = record.cost_ms;
    }
    root["steps"].push_back(std::move(j));
  }
  return root.dump(2);
}

StudyReport overtaking_study(const Scenario& scenario, const CostWeights& base,
                             const SimConfig& config, const VehicleParams& vehicle) {
  // Comfort and reference-tracking weights are held at the study's fixed
  // planner settings while the three studied weights sweep.
  CostWeights fixed = base;
  fixed[CostKind::LateralJerk] = 0.1;
  fixed[CostKind::LongitudinalJerk] = 0.1;
  fixed[CostKind::DistToReference] = 0.1;

  const double velocity_weights[] = {0.05, 0.1, 1.0};
  const double distance_weights[] = {0.0, 100.0};
  const double probability_weights[] = {2.0, 100.0, 1000.0};

  std::vector<std::array<double, 3>> cells;
  for (double wv : velocity_weights) {
    for (double wdo : distance_weights) {
      for (double wcp : probability_weights) {
        cells.push_back({wv, wdo, wcp});
      }
    }
  }
  cells.push_back({0.0, base[CostKind::DistToObstacle], 0.0});

  StudyReport report;
  report.runs.resize(cells.size());
  // Grid runs are independent closed loops; run them data-parallel with each
  // worker writing only its own row.
  parallel_for(cells.size(), true, [&](std::size_t i) {
    CostWeights weights = fixed;
    weights[CostKind::VelocityOffset] = cells[i][0];
    weights[CostKind::DistToObstacle] = cells[i][1];
    weights[CostKind::CollisionProbability] = cells[i][2];
    const auto begin = std::chrono::steady_clock::now();
    const RunLog log = run_scenario(scenario, weights, config, vehicle, config.replan_every);
    const auto end = std::chrono::steady_clock::now();
    StudyRun& row = report.runs[i];
    row.wall_ms = std::chrono::duration<double, std::milli>(end - begin).count();
    row.w_velocity = cells[i][0];
    row.w_dist_obstacle = cells[i][1];
    row.w_collision_prob = cells[i][2];
    row.overtook = log.overtook;
    row.min_clearance = log.min_clearance;
    row.steps = static_cast<int>(log.steps.size());
    row.status = log.status;
  });
  return report;
}

std::string study_to_csv(const StudyReport& report) {
  std::ostringstream out;
  out << "w_velocity,w_dist_obstacle,w_collision_prob,overtook,min_clearance,steps,status\n";
  for (const StudyRun& run : report.runs) {
    out << run.w_velocity << ',' << run.w_dist_obstacle << ',' << run.w_collision_prob << ','
        << (run.overtook ? 1 : 0) << ',' << run.min_clearance << ',' << run.steps << ','
        << agent_status_name(run.status) << '\n';
  }
  return out.str();
}

}  // namespace fplan
