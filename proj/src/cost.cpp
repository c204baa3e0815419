#include "fplan/cost.hpp"

#include <cmath>

#include "fplan/errors.hpp"

namespace fplan {
namespace {

constexpr double kDistanceFloor = 0.1;       ///< clamp for 1/x^2 and 1/d_M terms
constexpr double kVarianceFloor = 1e-12;

double trapezoid(const std::vector<double>& values, double dt) {
  double sum = 0.0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    sum += 0.5 * (values[i - 1] + values[i]) * dt;
  }
  return sum;
}

double normal_cdf(double z) { return 0.5 * (1.0 + std::erf(z / std::sqrt(2.0))); }

const PredictionStep& step_at(const ObstaclePrediction& prediction, std::size_t k) {
  return prediction.steps[std::min(k, prediction.steps.size() - 1)];
}

}  // namespace

double cost_acceleration(const TrajectorySample& sample, const CostContext& ctx) {
  std::vector<double> f;
  f.reserve(sample.states.size());
  for (const CartesianState& state : sample.states) f.push_back(state.a * state.a);
  return trapezoid(f, ctx.dt);
}

double cost_jerk(const TrajectorySample& sample, const CostContext& ctx) {
  std::vector<double> f;
  if (sample.states.size() < 2) return 0.0;
  f.reserve(sample.states.size() - 1);
  for (std::size_t k = 0; k + 1 < sample.states.size(); ++k) {
    const double jerk = (sample.states[k + 1].a - sample.states[k].a) / ctx.dt;
    f.push_back(jerk * jerk);
  }
  return trapezoid(f, ctx.dt);
}

double cost_lateral_jerk(const TrajectorySample& sample, const CostContext& ctx) {
  std::vector<double> f;
  f.reserve(sample.states.size());
  for (std::size_t k = 0; k < sample.states.size(); ++k) {
    const double t = static_cast<double>(k) * ctx.dt;
    const double jerk = t <= sample.tau + 1e-9 ? sample.lateral.eval(t).third : 0.0;
    f.push_back(jerk * jerk);
  }
  return trapezoid(f, ctx.dt);
}

double cost_longitudinal_jerk(const TrajectorySample& sample, const CostContext& ctx) {
  std::vector<double> f;
  f.reserve(sample.states.size());
  for (std::size_t k = 0; k < sample.states.size(); ++k) {
    const double t = static_cast<double>(k) * ctx.dt;
    double jerk = 0.0;
    if (t <= sample.tau + 1e-9) {
      jerk = sample.mode == SamplingMode::Velocity ? sample.longitudinal.eval(t).third
                                                   : sample.longitudinal_position.eval(t).third;
    }
    f.push_back(jerk * jerk);
  }
  return trapezoid(f, ctx.dt);
}

double cost_velocity_offset(const TrajectorySample& sample, const CostContext& ctx) {
  std::vector<double> f;
  f.reserve(sample.states.size());
  for (const CartesianState& state : sample.states) f.push_back(std::abs(state.v - ctx.v_ref));
  const double terminal = sample.states.back().v - ctx.v_ref;
  return trapezoid(f, ctx.dt) + terminal * terminal;
}

double cost_dist_reference(const TrajectorySample& sample, const CostContext& ctx) {
  std::vector<double> f;
  f.reserve(sample.frenet_states.size());
  for (const FrenetState& fs : sample.frenet_states) f.push_back(fs.d * fs.d);
  return trapezoid(f, ctx.dt);
}

double cost_dist_obstacle(const TrajectorySample& sample, const CostContext& ctx) {
  if (!ctx.predictions) return 0.0;
  double total = 0.0;
  std::vector<double> f(sample.states.size());
  for (const ObstaclePrediction& prediction : *ctx.predictions) {
    for (std::size_t k = 0; k < sample.states.size(); ++k) {
      const double dist =
          std::max((sample.states[k].position() - step_at(prediction, k).mean).norm(),
                   kDistanceFloor);
      f[k] = 1.0 / (dist * dist);
    }
    total += trapezoid(f, ctx.dt);
  }
  return total;
}

double footprint_gaussian_mass(const CartesianState& ego, double ego_length, double ego_width,
                               const Vec2& mean, const Eigen::Matrix2d& covariance) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eigen(covariance);
  const Eigen::Matrix2d frame = eigen.eigenvectors();
  const Eigen::Vector2d variances = eigen.eigenvalues();

  const Vec2 u(std::cos(ego.psi), std::sin(ego.psi));
  const Vec2 v(-std::sin(ego.psi), std::cos(ego.psi));
  double lo[2] = {0.0, 0.0};
  double hi[2] = {0.0, 0.0};
  bool first = true;
  for (const double su : {-0.5 * ego_length, 0.5 * ego_length}) {
    for (const double sv : {-0.5 * ego_width, 0.5 * ego_width}) {
      const Vec2 corner = ego.position() + su * u + sv * v;
      const Eigen::Vector2d q = frame.transpose() * (corner - mean);
      for (int axis = 0; axis < 2; ++axis) {
        lo[axis] = first ? q(axis) : std::min(lo[axis], q(axis));
        hi[axis] = first ? q(axis) : std::max(hi[axis], q(axis));
      }
      first = false;
    }
  }

  double mass = 1.0;
  for (int axis = 0; axis < 2; ++axis) {
    const double sigma = std::sqrt(std::max(variances(axis), kVarianceFloor));
    mass *= normal_cdf(hi[axis] / sigma) - normal_cdf(lo[axis] / sigma);
  }
  return mass;
}

double cost_collision_probability(const TrajectorySample& sample, const CostContext& ctx) {
  if (!ctx.predictions) return 0.0;
  double total = 0.0;
  std::vector<double> f(sample.states.size());
  for (const ObstaclePrediction& prediction : *ctx.predictions) {
    for (std::size_t k = 0; k < sample.states.size(); ++k) {
      const PredictionStep& step = step_at(prediction, k);
      f[k] = footprint_gaussian_mass(sample.states[k], ctx.ego_length, ctx.ego_width, step.mean,
                                     step.covariance);
    }
    total += trapezoid(f, ctx.dt);
  }
  return total;
}

double cost_collision_mahalanobis(const TrajectorySample& sample, const CostContext& ctx) {
  if (!ctx.predictions) return 0.0;
  double total = 0.0;
  std::vector<double> f(sample.states.size());
  for (const ObstaclePrediction& prediction : *ctx.predictions) {
    for (std::size_t k = 0; k < sample.states.size(); ++k) {
      const PredictionStep& step = step_at(prediction, k);
      const Eigen::Vector2d r = sample.states[k].position() - step.mean;
      const double d2 = r.dot(step.covariance.ldlt().solve(r));
      const double d_m = std::max(std::sqrt(std::max(d2, 0.0)), kDistanceFloor);
      const double t = static_cast<double>(k) * ctx.dt;
      f[k] = (1.0 - t / ctx.T) / d_m;
    }
    total += trapezoid(f, ctx.dt);
  }
  return total;
}

void compute_costs(TrajectorySample& sample, const CostWeights& weights, const CostContext& ctx) {
  using Fn = double (*)(const TrajectorySample&, const CostContext&);
  static constexpr Fn kFns[kCostKindCount] = {
      cost_acceleration,   cost_jerk,
      cost_lateral_jerk,   cost_longitudinal_jerk,
      cost_velocity_offset, cost_dist_reference,
      cost_dist_obstacle,  cost_collision_probability,
      cost_collision_mahalanobis,
  };
  double total = 0.0;
  for (std::size_t i = 0; i < kCostKindCount; ++i) {
    const double value = kFns[i](sample, ctx);
    if (!std::isfinite(value)) {
      throw NonFiniteCostError(std::string("non-finite cost: ") +
                               std::string(cost_kind_name(static_cast<CostKind>(i))));
    }
    sample.costs[i] = value;
    total += weights.values[i] * value;
  }
  sample.total_cost = total;
  sample.costed = true;
}

}  // namespace fplan
