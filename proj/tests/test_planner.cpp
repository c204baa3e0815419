#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "fplan/errors.hpp"
#include "fplan/feasibility.hpp"
#include "fplan/planner.hpp"
#include "fplan/prediction.hpp"
#include "fixtures.hpp"

namespace {

struct OpenRoad {
  fplan::Scenario scenario = fixtures::straight_scenario(200.0, 1, 10.0);
  fplan::ReferencePath path = fixtures::straight_ref(200.0);
  fplan::VehicleParams vehicle;
  fplan::SamplingConfig config;
  fplan::CostWeights weights;
  fplan::CostContext ctx;

  OpenRoad() {
    // Start well inside the lanelet so the rear overhang is on the road.
    scenario.problem.initial.x = 20.0;
    config.t_values = {1.0, 2.0, 3.0};
    config.d_values = {-0.75, -0.25, 0.0, 0.25, 0.75};
    config.v_values = {8.0, 9.0, 10.0, 11.0, 12.0, 13.0, 14.0, 15.0, 16.0};
    ctx.v_ref = 13.0;
  }

  void add_dodge_obstacle() {
    scenario = fixtures::straight_scenario(
        200.0, 2, 10.0, {fixtures::static_obstacle(1, 45.0, -1.2, 0.0, 2.0, 1.0)});
    scenario.problem.initial.x = 20.0;
  }
};

// Single lane fully blocked just ahead: a 10x10 box centred at x = 10 spans
// the whole road, and from 10 m/s even the hardest brake rolls into it.
struct WalledRoad {
  fplan::Scenario scenario =
      fixtures::straight_scenario(100.0, 1, 10.0,
                                  {fixtures::static_obstacle(1, 10.0, 0.0, 0.0, 10.0, 10.0)});
  fplan::ReferencePath path = fixtures::straight_ref(100.0);
  fplan::VehicleParams vehicle;
  fplan::SamplingConfig config;
  fplan::CostWeights weights;

  WalledRoad() {
    config.t_values = {1.0, 2.0, 3.0};
    config.d_values = {-0.5, 0.0, 0.5};
    config.v_values = {0.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0};
  }
};

fplan::TrajectorySample offset_pass(double y, double total_cost, int d_index) {
  fplan::TrajectorySample sample;
  sample.total_cost = total_cost;
  sample.costed = true;
  sample.d_index = d_index;
  for (int k = 0; k <= 30; ++k) {
    sample.states.push_back({-10.0 + k, y, 0.0, 10.0, 0.0, 0.0});
  }
  return sample;
}

fplan::TrajectorySample stopping_stub(double d_end, double v_end, double tau, int index) {
  fplan::TrajectorySample sample;
  sample.d_end = d_end;
  sample.v_end = v_end;
  sample.tau = tau;
  sample.d_index = index;
  return sample;
}

}  // namespace

TEST_SUITE("planner") {

TEST_CASE("an open road yields an optimal plan chasing the reference speed") {
  OpenRoad fx;
  const fplan::PlanResult result =
      fplan::plan_cycle(fx.scenario.problem.initial, fx.scenario, fx.path, fx.config, fx.weights,
                        fx.vehicle, fx.ctx);

  CHECK(result.category == fplan::PlanCategory::Optimal);
  CHECK(result.chosen.feasible());
  CHECK(result.chosen.collision_free);
  CHECK(result.chosen.on_road);
  CHECK(std::abs(result.chosen.v_end - fx.ctx.v_ref) <= 1.0);
  CHECK(result.chosen.d_end == 0.0);

  CHECK(result.diagnostics.generated == 135);
  CHECK(result.diagnostics.feasible > 0);
  CHECK(result.diagnostics.collision_checked ==
        result.diagnostics.collision_failures + result.diagnostics.boundary_failures + 1);

  // The cycle starts exactly at the handed-over state.
  const fplan::CartesianState& first = result.chosen.states.front();
  CHECK(std::abs(first.x - fx.scenario.problem.initial.x) <= 1e-6);
  CHECK(std::abs(first.y - fx.scenario.problem.initial.y) <= 1e-6);
  CHECK(std::abs(first.v - fx.scenario.problem.initial.v) <= 1e-6);
}

TEST_CASE("the chosen sample survives independent re-verification") {
  OpenRoad fx;
  fx.add_dodge_obstacle();
  const fplan::PlanResult result =
      fplan::plan_cycle(fx.scenario.problem.initial, fx.scenario, fx.path, fx.config, fx.weights,
                        fx.vehicle, fx.ctx);

  REQUIRE(result.category == fplan::PlanCategory::Optimal);
  const fplan::FeasibilityFlags flags =
      fplan::check_feasibility(result.chosen, fx.vehicle, fx.config.dt);
  CHECK(flags.all());
  CHECK(fplan::check_collision(result.chosen, fx.scenario, fx.vehicle));
  CHECK(fplan::check_on_road(result.chosen, fplan::build_road_boundary(fx.scenario), fx.vehicle));
}

TEST_CASE("lazy early exit equals exhaustively checking every feasible sample") {
  OpenRoad fx;
  fx.add_dodge_obstacle();
  fplan::PlanOptions options;
  options.keep_samples = true;
  const fplan::PlanResult result =
      fplan::plan_cycle(fx.scenario.problem.initial, fx.scenario, fx.path, fx.config, fx.weights,
                        fx.vehicle, fx.ctx, options);
  REQUIRE(result.category == fplan::PlanCategory::Optimal);
  CHECK(result.diagnostics.collision_failures > 0);  // the obstacle actually bites

  const fplan::RoadBoundary boundary = fplan::build_road_boundary(fx.scenario);
  const fplan::TrajectorySample* survivor = nullptr;
  for (const fplan::TrajectorySample& sample : result.samples) {
    if (!sample.feasible() || !sample.costed) continue;
    if (!fplan::check_collision(sample, fx.scenario, fx.vehicle)) continue;
    if (!fplan::check_on_road(sample, boundary, fx.vehicle)) continue;
    if (!survivor || sample.total_cost < survivor->total_cost ||
        (sample.total_cost == survivor->total_cost &&
         sample.index_triple() < survivor->index_triple())) {
      survivor = &sample;
    }
  }
  REQUIRE(survivor != nullptr);
  CHECK(survivor->index_triple() == result.chosen.index_triple());
  CHECK(survivor->total_cost == result.chosen.total_cost);
}

TEST_CASE("a fully blocked road with predictions falls back to minimum risk") {
  WalledRoad fx;
  const std::vector<fplan::ObstaclePrediction> predictions =
      fplan::predict_all(fx.scenario, 0, 30);
  fplan::CostContext ctx;
  ctx.predictions = &predictions;

  const fplan::PlanResult result = fplan::plan_cycle(
      fx.scenario.problem.initial, fx.scenario, fx.path, fx.config, fx.weights, fx.vehicle, ctx);
  CHECK(result.category == fplan::PlanCategory::EmergencyRisk);
  CHECK(result.chosen.feasible());
  CHECK(result.diagnostics.collision_failures == result.diagnostics.collision_checked);
}

TEST_CASE("a fully blocked road without predictions falls back to stopping") {
  WalledRoad fx;
  fplan::CostContext ctx;  // no predictions

  fplan::PlanOptions options;
  options.keep_samples = true;
  const fplan::PlanResult result =
      fplan::plan_cycle(fx.scenario.problem.initial, fx.scenario, fx.path, fx.config, fx.weights,
                        fx.vehicle, ctx, options);
  CHECK(result.category == fplan::PlanCategory::EmergencyStop);
  CHECK(result.chosen.feasible());
  CHECK(result.chosen.d_end == 0.0);
  CHECK(result.chosen.v_end == 0.0);  // maximal feasible deceleration

  // Ties on the end speed resolve to the shortest primitive horizon.
  double min_tau = 1e9;
  for (const fplan::TrajectorySample& sample : result.samples) {
    if (sample.feasible() && sample.d_end == 0.0 && sample.v_end == 0.0) {
      min_tau = std::min(min_tau, sample.tau);
    }
  }
  CHECK(result.chosen.tau == min_tau);
}

TEST_CASE("no feasible sample at all raises a planning failure") {
  OpenRoad fx;
  fx.config.t_values = {0.5};
  fx.config.d_values = {0.0};
  fx.config.v_values = {0.0};  // 10 -> 0 in half a second needs |a| ~ 20

  CHECK_THROWS_WITH_AS(
      fplan::plan_cycle(fx.scenario.problem.initial, fx.scenario, fx.path, fx.config, fx.weights,
                        fx.vehicle, fx.ctx),
      "no feasible trajectory in this cycle", fplan::PlanningFailure);
}

TEST_CASE("risk selection prefers the wider pass") {
  const fplan::TrajectorySample near = offset_pass(1.0, 5.0, 0);
  const fplan::TrajectorySample wide = offset_pass(10.0, 7.0, 1);
  std::vector<const fplan::TrajectorySample*> feasible{&near, &wide};

  std::vector<fplan::ObstaclePrediction> predictions(1);
  predictions[0].obstacle_id = 1;
  predictions[0].steps.resize(31, {{0.0, 0.0}, 0.0, 0.0, Eigen::Matrix2d::Identity()});
  fplan::CostContext ctx;
  ctx.predictions = &predictions;

  CHECK(fplan::min_risk_trajectory(feasible, ctx, 1.0) == &wide);

  // Zero harm flattens every risk; the cheaper sample wins the tie.
  CHECK(fplan::min_risk_trajectory(feasible, ctx, 0.0) == &near);

  std::vector<const fplan::TrajectorySample*> only{&near};
  CHECK(fplan::min_risk_trajectory(only, ctx, 1.0) == &near);
}

TEST_CASE("the stopping rule buckets by nearest lateral offset") {
  fplan::SamplingConfig config;
  config.d_values = {-3.5, -1.0, 0.0, 0.5, 1.0};

  const fplan::TrajectorySample a = stopping_stub(0.5, 5.0, 3.0, 0);
  const fplan::TrajectorySample b = stopping_stub(0.5, 2.0, 3.0, 1);
  const fplan::TrajectorySample c = stopping_stub(0.5, 8.0, 3.0, 2);
  const fplan::TrajectorySample d = stopping_stub(1.0, 1.0, 3.0, 3);
  const fplan::TrajectorySample e = stopping_stub(0.5, 2.0, 2.0, 4);
  std::vector<const fplan::TrajectorySample*> feasible{&a, &b, &c, &d, &e};

  // d_curr = 0.6: bucket 0.5 beats 1.0; min end speed 2.0; shorter tau wins.
  CHECK(fplan::stopping_trajectory(feasible, 0.6, config) == &e);

  // Exact lateral match selects its own bucket.
  const fplan::TrajectorySample centre = stopping_stub(0.0, 6.0, 3.0, 5);
  std::vector<const fplan::TrajectorySample*> with_centre{&a, &b, &centre};
  CHECK(fplan::stopping_trajectory(with_centre, 0.0, config) == &centre);

  // An empty nearest bucket falls outward to the next one.
  std::vector<const fplan::TrajectorySample*> no_half{&d};
  CHECK(fplan::stopping_trajectory(no_half, 0.6, config) == &d);
}

TEST_CASE("parallel and serial cycles agree bit for bit") {
  OpenRoad fx;
  fx.add_dodge_obstacle();
  const std::vector<fplan::ObstaclePrediction> predictions =
      fplan::predict_all(fx.scenario, 0, 30);
  fx.ctx.predictions = &predictions;

  fplan::PlanOptions serial;
  serial.keep_samples = true;
  fplan::PlanOptions parallel = serial;
  parallel.parallel = true;

  const fplan::PlanResult a = fplan::plan_cycle(fx.scenario.problem.initial, fx.scenario, fx.path,
                                                fx.config, fx.weights, fx.vehicle, fx.ctx, serial);
  const fplan::PlanResult b = fplan::plan_cycle(fx.scenario.problem.initial, fx.scenario, fx.path,
                                                fx.config, fx.weights, fx.vehicle, fx.ctx,
                                                parallel);

  CHECK(a.category == b.category);
  CHECK(a.chosen.index_triple() == b.chosen.index_triple());
  CHECK(a.chosen.total_cost == b.chosen.total_cost);
  CHECK(a.chosen.states == b.chosen.states);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].costs == b.samples[i].costs);
    CHECK(a.samples[i].total_cost == b.samples[i].total_cost);
    CHECK(a.samples[i].feasibility == b.samples[i].feasibility);
  }
}

TEST_CASE("scaling every weight leaves the choice unchanged") {
  OpenRoad fx;
  fx.add_dodge_obstacle();
  const fplan::PlanResult base =
      fplan::plan_cycle(fx.scenario.problem.initial, fx.scenario, fx.path, fx.config, fx.weights,
                        fx.vehicle, fx.ctx);

  for (const double lambda : {2.0, 0.5, 3.0}) {
    fplan::CostWeights scaled = fx.weights;
    for (double& w : scaled.values) w *= lambda;
    const fplan::PlanResult result =
        fplan::plan_cycle(fx.scenario.problem.initial, fx.scenario, fx.path, fx.config, scaled,
                          fx.vehicle, fx.ctx);
    CHECK(result.category == base.category);
    CHECK(result.chosen.index_triple() == base.chosen.index_triple());
  }
}

TEST_CASE("a prebuilt road boundary changes nothing but the work done") {
  OpenRoad fx;
  const fplan::RoadBoundary boundary = fplan::build_road_boundary(fx.scenario);
  fplan::PlanOptions with_boundary;
  with_boundary.boundary = &boundary;

  const fplan::PlanResult fresh =
      fplan::plan_cycle(fx.scenario.problem.initial, fx.scenario, fx.path, fx.config, fx.weights,
                        fx.vehicle, fx.ctx);
  const fplan::PlanResult reused =
      fplan::plan_cycle(fx.scenario.problem.initial, fx.scenario, fx.path, fx.config, fx.weights,
                        fx.vehicle, fx.ctx, with_boundary);
  CHECK(fresh.category == reused.category);
  CHECK(fresh.chosen.index_triple() == reused.chosen.index_triple());
  CHECK(fresh.chosen.total_cost == reused.chosen.total_cost);
}

}  // TEST_SUITE
