#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "fplan/feasibility.hpp"
#include "fplan/sampler.hpp"

using namespace fplan;

namespace {

TrajectorySample sample_from_states(std::vector<CartesianState> states) {
  TrajectorySample sample;
  sample.states = std::move(states);
  return sample;
}

// Naive per-point re-check, deliberately written as four separate loops.
FeasibilityFlags oracle_flags(const TrajectorySample& sample, const VehicleParams& p, double dt) {
  FeasibilityFlags flags{true, true, true, true};
  const double kappa_max = std::tan(p.delta_max) / p.wheelbase;
  const auto& st = sample.states;
  for (const CartesianState& s : st) {
    const double v = std::max(0.0, s.v);
    const double upper = v > p.v_switch ? p.a_max * p.v_switch / v : p.a_max;
    if (!(s.a >= -p.a_max && s.a <= upper)) flags.acceleration = false;
  }
  for (const CartesianState& s : st) {
    if (!(std::abs(s.kappa) <= kappa_max)) flags.curvature = false;
  }
  for (std::size_t k = 0; k + 1 < st.size(); ++k) {
    if (!(std::abs((st[k + 1].kappa - st[k].kappa) / dt) <= p.kappa_dot_max)) {
      flags.curvature_rate = false;
    }
  }
  for (std::size_t k = 0; k + 1 < st.size(); ++k) {
    const double psi_dot = normalize_angle(st[k + 1].psi - st[k].psi) / dt;
    if (!(std::abs(psi_dot) <= kappa_max * st[k].v)) flags.yaw_rate = false;
  }
  return flags;
}

}  // namespace

TEST_SUITE("feasibility") {

TEST_CASE("permissible acceleration follows the piecewise velocity rule") {
  VehicleParams p;
  CHECK(permissible_acceleration(p.v_switch, p) == p.a_max);
  CHECK(permissible_acceleration(2.0 * p.v_switch, p) == doctest::Approx(0.5 * p.a_max));
  CHECK(permissible_acceleration(0.0, p) == p.a_max);
  CHECK(permissible_acceleration(5.0, p) == p.a_max);
  CHECK(permissible_acceleration(40.0, p) == doctest::Approx(p.a_max * p.v_switch / 40.0));
}

TEST_CASE("constant-velocity straight-line sample passes all checks") {
  std::vector<CartesianState> states;
  for (int k = 0; k <= 30; ++k) {
    CartesianState s;
    s.x = 10.0 * 0.1 * k;
    s.v = 10.0;
    states.push_back(s);
  }
  const FeasibilityFlags flags = check_feasibility(sample_from_states(states), {}, 0.1);
  CHECK(flags.acceleration);
  CHECK(flags.curvature);
  CHECK(flags.curvature_rate);
  CHECK(flags.yaw_rate);
  CHECK(flags.all());
}

TEST_CASE("curvature above tan(delta_max)/L fails the curvature check") {
  VehicleParams p;
  p.delta_max = M_PI / 4;
  p.wheelbase = 2.0;
  CHECK(p.kappa_max() == doctest::Approx(0.5).epsilon(1e-12));

  std::vector<CartesianState> states(5);
  for (auto& s : states) {
    s.v = 5.0;
    s.kappa = 0.6;
  }
  const FeasibilityFlags flags = check_feasibility(sample_from_states(states), p, 0.1);
  CHECK(!flags.curvature);
  CHECK(flags.acceleration);

  for (auto& s : states) s.kappa = 0.45;
  CHECK(check_feasibility(sample_from_states(states), p, 0.1).curvature);
}

TEST_CASE("flags match the brute-force oracle on 1000 random samples") {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> ua(-10.0, 10.0);
  std::uniform_real_distribution<double> uk(-0.45, 0.45);
  std::uniform_real_distribution<double> uv(0.0, 25.0);
  std::uniform_real_distribution<double> upsi(-0.08, 0.08);
  std::uniform_int_distribution<int> ulen(2, 12);
  const VehicleParams p;
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<CartesianState> states(ulen(rng));
    double psi = 0.0;
    for (auto& s : states) {
      psi += upsi(rng);
      s.psi = psi;
      s.a = ua(rng);
      s.kappa = uk(rng);
      s.v = uv(rng);
    }
    const TrajectorySample sample = sample_from_states(states);
    const FeasibilityFlags got = check_feasibility(sample, p, 0.1);
    const FeasibilityFlags want = oracle_flags(sample, p, 0.1);
    if (!(got == want)) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("relaxing any limit never makes a feasible sample infeasible") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> ua(-9.0, 9.0);
  std::uniform_real_distribution<double> uk(-0.35, 0.35);
  std::uniform_real_distribution<double> uv(0.0, 20.0);
  std::uniform_real_distribution<double> upsi(-0.05, 0.05);
  const VehicleParams base;
  for (int i = 0; i < 300; ++i) {
    std::vector<CartesianState> states(8);
    double psi = 0.0;
    for (auto& s : states) {
      psi += upsi(rng);
      s.psi = psi;
      s.a = ua(rng);
      s.kappa = uk(rng);
      s.v = uv(rng);
    }
    const TrajectorySample sample = sample_from_states(states);
    const FeasibilityFlags before = check_feasibility(sample, base, 0.1);

    VehicleParams wider_a = base;
    wider_a.a_max *= 2.0;
    const FeasibilityFlags after_a = check_feasibility(sample, wider_a, 0.1);
    if (before.acceleration) CHECK(after_a.acceleration);

    VehicleParams wider_steer = base;
    wider_steer.delta_max = 1.2;
    const FeasibilityFlags after_steer = check_feasibility(sample, wider_steer, 0.1);
    if (before.curvature) CHECK(after_steer.curvature);
    if (before.yaw_rate) CHECK(after_steer.yaw_rate);

    VehicleParams wider_rate = base;
    wider_rate.kappa_dot_max *= 3.0;
    const FeasibilityFlags after_rate = check_feasibility(sample, wider_rate, 0.1);
    if (before.curvature_rate) CHECK(after_rate.curvature_rate);
  }
}

TEST_CASE("yaw rate of transformed samples tracks kappa times speed") {
  const ReferencePath path = fixtures::arc_ref(50.0);
  FrenetState current;
  current.s = 25.0;
  current.s_dot = 10.0;
  SamplingConfig config;
  config.t_values = {2.0, 3.0};
  config.d_values = {-2.0, 0.0, 2.0};
  config.v_values = {8.0, 10.0, 12.0};
  const SampleSet set = generate_samples(current, config, path);
  const VehicleParams p;
  const double bound = 0.05 * p.kappa_max();
  REQUIRE(!set.samples.empty());
  for (const TrajectorySample& sample : set.samples) {
    for (std::size_t k = 0; k + 1 < sample.states.size(); ++k) {
      const CartesianState& s = sample.states[k];
      const double psi_dot = normalize_angle(sample.states[k + 1].psi - s.psi) / 0.1;
      CHECK(std::abs(psi_dot - s.kappa * s.v) <= bound * std::max(s.v, 1.0));
    }
  }
}

}  // TEST_SUITE
