#pragma once

#include <vector>

#include "fplan/cost_kinds.hpp"
#include "fplan/prediction.hpp"
#include "fplan/sampler.hpp"

namespace fplan {

struct CostContext {
  double v_ref = 10.0;  ///< constant reference velocity [m/s]
  const std::vector<ObstaclePrediction>* predictions = nullptr;
  double T = 3.0;
  double dt = 0.1;
  double ego_length = 4.5;
  double ego_width = 2.0;
};

/// All integrals use the trapezoidal rule on the sample's dt grid.
double cost_acceleration(const TrajectorySample& sample, const CostContext& ctx);
double cost_jerk(const TrajectorySample& sample, const CostContext& ctx);
double cost_lateral_jerk(const TrajectorySample& sample, const CostContext& ctx);
double cost_longitudinal_jerk(const TrajectorySample& sample, const CostContext& ctx);
double cost_velocity_offset(const TrajectorySample& sample, const CostContext& ctx);
double cost_dist_reference(const TrajectorySample& sample, const CostContext& ctx);
double cost_dist_obstacle(const TrajectorySample& sample, const CostContext& ctx);
double cost_collision_probability(const TrajectorySample& sample, const CostContext& ctx);
double cost_collision_mahalanobis(const TrajectorySample& sample, const CostContext& ctx);

/// Probability mass of the Gaussian N(mean, covariance) over the ego
/// footprint at `ego`: the relative geometry is rotated into the covariance
/// eigenframe and the footprint replaced by its axis-aligned bounding box
/// there, giving a product of 1-D normal CDF differences (slight
/// over-approximation of the exact integral).
double footprint_gaussian_mass(const CartesianState& ego, double ego_length, double ego_width,
                               const Vec2& mean, const Eigen::Matrix2d& covariance);

/// Fills sample.costs and sample.total_cost. The total is accumulated in
/// fixed enum order (acceleration first, mahalanobis last), so it is
/// bit-reproducible. Throws NonFiniteCostError on a non-finite partial cost.
void compute_costs(TrajectorySample& sample, const CostWeights& weights, const CostContext& ctx);

}  // namespace fplan
