#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fplan/scenario.hpp"
#include "fplan/types.hpp"

namespace fplan {

struct PredictionConfig {
  /// Initial position uncertainty in the obstacle's heading frame [m^2].
  double sigma0_lon = 0.1;
  double sigma0_lat = 0.05;
  /// Uncertainty growth per second of horizon, heading frame [m^2/s].
  double q_lon = 0.5;
  double q_lat = 0.1;
  /// Fixed variance for static obstacles (no growth) [m^2].
  double static_sigma = 0.01;

  bool operator==(const PredictionConfig&) const = default;
};

struct PredictionStep {
  Vec2 mean = Vec2::Zero();
  double psi = 0.0;
  double v = 0.0;
  Eigen::Matrix2d covariance = Eigen::Matrix2d::Zero();
};

struct ObstaclePrediction {
  int obstacle_id = 0;
  std::vector<PredictionStep> steps;  ///< indexed 0..horizon_steps
};

/// Constant-velocity, constant-heading propagation from the obstacle's state
/// at now_step. Covariance in the heading frame is diag(sigma0) + k*dt*diag(q)
/// at step k, rotated into world coordinates. Deliberately blind to scripted
/// states after now_step. Static obstacles keep a fixed pose and a small
/// constant covariance.
ObstaclePrediction predict(const Obstacle& obstacle, int now_step, int horizon_steps, double dt,
                           const PredictionConfig& config = {});

std::vector<ObstaclePrediction> predict_all(const Scenario& scenario, int now_step,
                                            int horizon_steps,
                                            const PredictionConfig& config = {});

}  // namespace fplan
