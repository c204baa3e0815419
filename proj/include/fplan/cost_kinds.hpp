#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace fplan {

enum class CostKind {
  Acceleration,
  Jerk,
  LateralJerk,
  LongitudinalJerk,
  VelocityOffset,
  DistToReference,
  DistToObstacle,
  CollisionProbability,
  CollisionMahalanobis,
};

inline constexpr std::size_t kCostKindCount = 9;

std::string_view cost_kind_name(CostKind kind);
std::optional<CostKind> cost_kind_from_name(std::string_view name);

struct CostWeights {
  std::array<double, kCostKindCount> values{0.1, 0.1, 0.1, 0.1, 1.0, 0.1, 0.0, 20.0, 0.0};

  double& operator[](CostKind kind) { return values[static_cast<std::size_t>(kind)]; }
  double operator[](CostKind kind) const { return values[static_cast<std::size_t>(kind)]; }

  bool operator==(const CostWeights&) const = default;
};

}  // namespace fplan
