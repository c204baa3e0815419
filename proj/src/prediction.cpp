#include "fplan/prediction.hpp"

#include <cmath>

namespace fplan {

ObstaclePrediction predict(const Obstacle& obstacle, int now_step, int horizon_steps, double dt,
                           const PredictionConfig& config) {
  ObstaclePrediction prediction;
  prediction.obstacle_id = obstacle.id;
  prediction.steps.reserve(static_cast<std::size_t>(horizon_steps) + 1);

  const CartesianState base = obstacle_state_at(obstacle, now_step, dt);
  Eigen::Matrix2d rotation;
  rotation << std::cos(base.psi), -std::sin(base.psi), std::sin(base.psi), std::cos(base.psi);

  for (int k = 0; k <= horizon_steps; ++k) {
    PredictionStep step;
    step.psi = base.psi;
    if (obstacle.kind == ObstacleKind::Static) {
      step.mean = base.position();
      step.v = 0.0;
      step.covariance = Eigen::Matrix2d::Identity() * config.static_sigma;
    } else {
      const double advance = base.v * k * dt;
      step.mean = base.position() + advance * Vec2(std::cos(base.psi), std::sin(base.psi));
      step.v = base.v;
      Eigen::Matrix2d aligned = Eigen::Matrix2d::Zero();
      aligned(0, 0) = config.sigma0_lon + k * dt * config.q_lon;
      aligned(1, 1) = config.sigma0_lat + k * dt * config.q_lat;
      step.covariance = rotation * aligned * rotation.transpose();
    }
    prediction.steps.push_back(step);
  }
  return prediction;
}

std::vector<ObstaclePrediction> predict_all(const Scenario& scenario, int now_step,
                                            int horizon_steps, const PredictionConfig& config) {
  std::vector<ObstaclePrediction> out;
  out.reserve(scenario.obstacles.size());
  for (const Obstacle& obstacle : scenario.obstacles) {
    out.push_back(predict(obstacle, now_step, horizon_steps, scenario.dt, config));
  }
  return out;
}

}  // namespace fplan
