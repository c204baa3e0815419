#include "fplan/cost_kinds.hpp"

namespace fplan {
namespace {

constexpr std::array<std::string_view, kCostKindCount> kNames = {
    "acceleration",      "jerk",
    "lateral_jerk",      "longitudinal_jerk",
    "velocity_offset",   "dist_to_reference",
    "dist_to_obstacle",  "collision_probability",
    "collision_mahalanobis",
};

}  // namespace

std::string_view cost_kind_name(CostKind kind) {
  return kNames[static_cast<std::size_t>(kind)];
}

std::optional<CostKind> cost_kind_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<CostKind>(i);
  }
  return std::nullopt;
}

}  // namespace fplan
