#include "fplan/bench.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fplan/planner.hpp"
#include "fplan/prediction.hpp"
#include "fplan/refpath.hpp"
#include "fplan/sampler.hpp"

namespace fplan {
namespace {

/// 700 m straight two-lane road, ego at 10 m/s, one lead vehicle at 13 m/s.
Scenario bench_scenario() {
  Scenario scenario;
  scenario.dt = 0.1;
  Lanelet lanelet;
  lanelet.id = 1;
  for (int x = 0; x <= 700; x += 10) {
    lanelet.left.emplace_back(x, 3.5);
    lanelet.right.emplace_back(x, -3.5);
  }
  for (std::size_t i = 0; i < lanelet.left.size(); ++i) {
    lanelet.center.push_back(0.5 * (lanelet.left[i] + lanelet.right[i]));
  }
  scenario.lanelets.push_back(std::move(lanelet));

  Obstacle lead;
  lead.id = 1;
  lead.kind = ObstacleKind::Dynamic;
  lead.length = 4.5;
  lead.width = 2.0;
  CartesianState state;
  state.x = 60.0;
  state.y = 0.0;
  state.psi = 0.0;
  state.v = 13.0;
  lead.states.push_back(state);
  scenario.obstacles.push_back(std::move(lead));

  scenario.problem.initial.x = 20.0;
  scenario.problem.initial.v = 10.0;
  scenario.problem.goal_polygon = {{680.0, -3.5}, {700.0, -3.5}, {700.0, 3.5}, {680.0, 3.5}};
  scenario.problem.goal_step_lo = 0;
  scenario.problem.goal_step_hi = 600;
  return scenario;
}

double percentile(std::vector<double> values, double q) {
  std::sort(values.begin(), values.end());
  const auto n = values.size();
  if (n == 1) return values.front();
  const std::size_t index =
      std::min(n - 1, static_cast<std::size_t>(std::ceil(q * static_cast<double>(n))) - 1);
  return values[index];
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const auto n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

struct StageTimes {
  std::vector<double> sampling, feasibility, cost, pipeline;
};

}  // namespace

int density_for_count(int count) {
  switch (count) {
    case 50: return 1;
    case 180: return 2;
    case 800: return 3;
    case 3500: return 4;
    case 13000: return 5;
    case 90000: return 6;
    default:
      throw std::invalid_argument("count " + std::to_string(count) +
                                  " is not on the density ladder");
  }
}

std::vector<BenchRow> run_benchmark(const std::vector<int>& counts, int repetitions,
                                    bool with_parallel, int warmup) {
  const Scenario scenario = bench_scenario();
  SplineConfig spline;
  const ReferencePath path = build_reference_path(scenario, plan_route(scenario), spline);
  const RoadBoundary boundary = build_road_boundary(scenario);
  const VehicleParams vehicle;
  const double T = 3.0;
  const int horizon_steps = static_cast<int>(std::llround(T / scenario.dt));
  const std::vector<ObstaclePrediction> predictions =
      predict_all(scenario, 0, horizon_steps);

  CostContext ctx;
  ctx.v_ref = 15.0;
  ctx.predictions = &predictions;
  ctx.T = T;
  ctx.dt = scenario.dt;
  ctx.ego_length = vehicle.length;
  ctx.ego_width = vehicle.width;
  const CostWeights weights;
  const CartesianState current = scenario.problem.initial;
  const FrenetState frenet_current = path.to_frenet(current);

  std::vector<BenchRow> rows;
  for (int count : counts) {
    const int level = density_for_count(count);
    const SamplingConfig sampling =
        default_config_for(frenet_current, vehicle, T, scenario.dt, level);

    StageTimes serial, parallel;
    for (int mode = 0; mode < (with_parallel ? 2 : 1); ++mode) {
      StageTimes& times = mode == 0 ? serial : parallel;
      for (int rep = 0; rep < warmup + repetitions; ++rep) {
        PlanOptions options;
        options.parallel = mode == 1;
        options.boundary = &boundary;
        const PlanResult result =
            plan_cycle(current, scenario, path, sampling, weights, vehicle, ctx, options);
        if (rep < warmup) continue;
        times.sampling.push_back(result.sampling_ms);
        times.feasibility.push_back(result.feasibility_ms);
        times.cost.push_back(result.cost_ms);
        times.pipeline.push_back(result.sampling_ms + result.feasibility_ms + result.cost_ms);
      }
    }

    const auto emit = [&](const StageTimes& times, const char* mode_name,
                          const StageTimes* baseline) {
      const std::pair<const char*, const std::vector<double>*> stages[] = {
          {"sampling", &times.sampling},
          {"feasibility", &times.feasibility},
          {"cost", &times.cost},
          {"pipeline", &times.pipeline},
      };
      const std::pair<const char*, const std::vector<double>*> base_stages[] = {
          {"sampling", baseline ? &baseline->sampling : nullptr},
          {"feasibility", baseline ? &baseline->feasibility : nullptr},
          {"cost", baseline ? &baseline->cost : nullptr},
          {"pipeline", baseline ? &baseline->pipeline : nullptr},
      };
      for (int i = 0; i < 4; ++i) {
        BenchRow row;
        row.count = count;
        row.stage = stages[i].first;
        row.mode = mode_name;
        row.median_ms = median(*stages[i].second);
        row.p95_ms = percentile(*stages[i].second, 0.95);
        row.speedup =
            base_stages[i].second ? median(*base_stages[i].second) / row.median_ms : 1.0;
        rows.push_back(std::move(row));
      }
    };
    emit(serial, "serial", nullptr);
    if (with_parallel) emit(parallel, "parallel", &serial);
  }
  return rows;
}

std::string bench_to_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "count,stage,mode,median_ms,p95_ms,speedup\n";
  for (const BenchRow& row : rows) {
    out << row.count << ',' << row.stage << ',' << row.mode << ',' << row.median_ms << ','
        << row.p95_ms << ',' << row.speedup << '\n';
  }
  return out.str();
}

}  // namespace fplan
