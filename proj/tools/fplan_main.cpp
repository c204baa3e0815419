#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fplan/bench.hpp"
#include "fplan/config.hpp"
#include "fplan/errors.hpp"
#include "fplan/scenario.hpp"
#include "fplan/sim.hpp"
#include "fplan/svg.hpp"

namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << content;
}

bool goal_reached(fplan::AgentStatus status) {
  return status == fplan::AgentStatus::GoalReached ||
         status == fplan::AgentStatus::GoalReachedOutsideTargetTime ||
         status == fplan::AgentStatus::GoalReachedFasterThanTargetTime;
}

int cmd_run(const std::string& scenario_path, const std::string& config_path,
            const std::string& out_dir) {
  fplan::Scenario scenario;
  fplan::AppConfig config;
  try {
    scenario = fplan::load_scenario(scenario_path);
    if (!config_path.empty()) config = fplan::load_config(config_path);
  } catch (const fplan::PlanningError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  fs::create_directories(out_dir);
  const fplan::CycleHook hook = [&](int step, const fplan::PlanResult& result) {
    char name[32];
    std::snprintf(name, sizeof(name), "fan_%05d.svg", step);
    write_file(fs::path(out_dir) / name, fplan::render_fan_svg(scenario, result, step));
  };

  const fplan::RunLog log = fplan::run_scenario(scenario, config.weights, config.sim,
                                               config.vehicle, config.sim.replan_every, hook);
  write_file(fs::path(out_dir) / "runlog.json", fplan::runlog_to_json(log));

  const int collisions = log.collision_step >= 0 ? 1 : 0;
  std::cout << "status=" << fplan::agent_status_name(log.status) << " steps=" << log.steps.size()
            << " collisions=" << collisions;
  if (!log.message.empty()) std::cout << " message=\"" << log.message << '"';
  std::cout << "\n";
  return goal_reached(log.status) ? 0 : 1;
}

int cmd_study(const std::string& fixture, const std::string& fixtures_dir,
              const std::string& config_path, const std::string& out_dir) {
  const std::vector<std::string> known = {"overtake", "overtake_oncoming"};
  fs::path scenario_path = fixture;
  if (!fs::exists(scenario_path)) {
    scenario_path = fs::path(fixtures_dir) / (fixture + ".json");
  }
  if (!fs::exists(scenario_path)) {
    std::cerr << "error: unknown fixture \"" << fixture << "\"; available:";
    for (const auto& name : known) std::cerr << ' ' << name;
    std::cerr << "\n";
    return 2;
  }

  fplan::Scenario scenario;
  fplan::AppConfig config;
  try {
    scenario = fplan::load_scenario(scenario_path.string());
    if (!config_path.empty()) config = fplan::load_config(config_path);
  } catch (const fplan::PlanningError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  fs::create_directories(out_dir);
  const fplan::StudyReport report =
      fplan::overtaking_study(scenario, config.weights, config.sim, config.vehicle);
  write_file(fs::path(out_dir) / "study.csv", fplan::study_to_csv(report));

  // Re-run the collision-probability sweep at full velocity weight to render
  // the trajectory comparison figure.
  std::vector<fplan::RunLog> logs;
  std::vector<std::pair<std::string, const fplan::RunLog*>> labeled;
  logs.reserve(3);
  for (double wcp : {2.0, 100.0, 1000.0}) {
    fplan::CostWeights weights = config.weights;
    weights[fplan::CostKind::VelocityOffset] = 1.0;
    weights[fplan::CostKind::DistToObstacle] = 0.0;
    weights[fplan::CostKind::CollisionProbability] = wcp;
    logs.push_back(fplan::run_scenario(scenario, weights, config.sim, config.vehicle,
                                       config.sim.replan_every));
  }
  const char* labels[] = {"w_cp=2", "w_cp=100", "w_cp=1000"};
  for (std::size_t i = 0; i < logs.size(); ++i) labeled.emplace_back(labels[i], &logs[i]);
  write_file(fs::path(out_dir) / "study.svg",
             fplan::render_runs_svg(scenario, labeled, scenario.dt));

  std::cout << fplan::study_to_csv(report);
  return 0;
}

int cmd_bench(std::vector<int> counts, bool parallel, const std::string& out_csv,
              int repetitions) {
  try {
    for (int count : counts) fplan::density_for_count(count);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  const auto rows = fplan::run_benchmark(counts, repetitions, parallel);
  const std::string csv = fplan::bench_to_csv(rows);
  if (!out_csv.empty()) {
    write_file(out_csv, csv);
  }
  std::cout << csv;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling-based Frenet motion planner: scenario runner, weight study, benchmark"};
  app.require_subcommand(1);

  std::string scenario_path, config_path, out_dir = "out";
  auto* run = app.add_subcommand("run", "closed-loop run of a scenario file");
  run->add_option("scenario", scenario_path, "scenario JSON path")->required();
  run->add_option("--config", config_path, "config JSON path");
  run->add_option("--out", out_dir, "output directory");

  std::string fixture, fixtures_dir = "scenarios";
  auto* study = app.add_subcommand("study", "cost-weight variation study on a fixture");
  study->add_option("fixture", fixture, "fixture name or scenario path")->required();
  study->add_option("--fixtures-dir", fixtures_dir, "directory with shipped fixtures");
  study->add_option("--config", config_path, "config JSON path");
  study->add_option("--out", out_dir, "output directory");

  std::vector<int> counts = {50, 180, 800, 3500, 13000, 90000};
  bool parallel = false;
  int repetitions = 30;
  std::string out_csv;
  auto* bench = app.add_subcommand("bench", "pipeline timing across trajectory counts");
  bench->add_option("--counts", counts, "trajectory counts from the ladder");
  bench->add_flag("--parallel", parallel, "also time the data-parallel mode");
  bench->add_option("--reps", repetitions, "repetitions per count");
  bench->add_option("--out", out_csv, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) return cmd_run(scenario_path, config_path, out_dir);
    if (study->parsed()) return cmd_study(fixture, fixtures_dir, config_path, out_dir);
    if (bench->parsed()) return cmd_bench(counts, parallel, out_csv, repetitions);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
