#pragma once

#include <vector>

#include "fplan/types.hpp"

namespace fplan {

/// Penalized least-squares fit of a uniform cubic B-spline to a point cloud.
/// Approximating, not interpolating: a second-difference penalty on the
/// control points trades fidelity for smoothness.
class SmoothingSpline {
 public:
  /// points: ordered samples (chord-length parametrized internally);
  /// lambda: penalty weight (0 = pure least squares);
  /// ctrl_spacing: target arc length between control points [m].
  SmoothingSpline(const std::vector<Vec2>& points, double lambda, double ctrl_spacing);

  struct Eval {
    Vec2 p;
    Vec2 d1;  ///< derivative w.r.t. the spline parameter
    Vec2 d2;
    Vec2 d3;
  };

  /// Evaluates at parameter t in [0, segment_count()]; clamped outside.
  Eval eval(double t) const;

  double segment_count() const { return static_cast<double>(control_.size() - 3); }

 private:
  std::vector<Vec2> control_;
};

/// Curvature of a parametric curve from its first two parameter derivatives.
double parametric_curvature(const Vec2& d1, const Vec2& d2);

/// d(kappa)/ds for a parametric curve (chain rule through arc length).
double parametric_curvature_rate(const Vec2& d1, const Vec2& d2, const Vec2& d3);

}  // namespace fplan
