#include "fplan/spline.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace fplan {
namespace {

/// Uniform cubic B-spline basis values for local parameter u in [0, 1],
/// returned for the four control points spanning the segment.
void basis(double u, double b[4]) {
  const double w = 1.0 - u;
  b[0] = w * w * w / 6.0;
  b[1] = (3.0 * u * u * u - 6.0 * u * u + 4.0) / 6.0;
  b[2] = (-3.0 * u * u * u + 3.0 * u * u + 3.0 * u + 1.0) / 6.0;
  b[3] = u * u * u / 6.0;
}

}  // namespace

SmoothingSpline::SmoothingSpline(const std::vector<Vec2>& points, double lambda,
                                 double ctrl_spacing) {
  std::vector<double> chord(points.size(), 0.0);
  for (std::size_t i = 1; i < points.size(); ++i) {
    chord[i] = chord[i - 1] + (points[i] - points[i - 1]).norm();
  }
  const double total = chord.back();
  const int segments = std::max(1, static_cast<int>(std::lround(total / ctrl_spacing)));
  const int n = segments + 3;
  const auto m = static_cast<Eigen::Index>(points.size());

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double t = total > 0.0 ? chord[static_cast<std::size_t>(i)] / total * segments : 0.0;
    const int seg = std::min(static_cast<int>(t), segments - 1);
    double b[4];
    basis(t - seg, b);
    for (int k = 0; k < 4; ++k) a(i, seg + k) = b[k];
  }

  Eigen::MatrixXd lhs = a.transpose() * a;
  for (int j = 0; j + 2 < n; ++j) {
    // second-difference penalty row (P_j - 2 P_{j+1} + P_{j+2})
    const double coeff[3] = {1.0, -2.0, 1.0};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        lhs(j + r, j + c) += lambda * coeff[r] * coeff[c];
      }
    }
  }

  Eigen::MatrixXd rhs(m, 2);
  for (Eigen::Index i = 0; i < m; ++i) {
    rhs(i, 0) = points[static_cast<std::size_t>(i)].x();
    rhs(i, 1) = points[static_cast<std::size_t>(i)].y();
  }
  const Eigen::MatrixXd solved = lhs.ldlt().solve(a.transpose() * rhs);

  control_.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    control_[static_cast<std::size_t>(j)] = Vec2(solved(j, 0), solved(j, 1));
  }
}

SmoothingSpline::Eval SmoothingSpline::eval(double t) const {
  const int segments = static_cast<int>(control_.size()) - 3;
  t = std::clamp(t, 0.0, static_cast<double>(segments));
  const int seg = std::min(static_cast<int>(t), segments - 1);
  const double u = t - seg;
  const double w = 1.0 - u;

  const Vec2& p0 = control_[static_cast<std::size_t>(seg)];
  const Vec2& p1 = control_[static_cast<std::size_t>(seg) + 1];
  const Vec2& p2 = control_[static_cast<std::size_t>(seg) + 2];
  const Vec2& p3 = control_[static_cast<std::size_t>(seg) + 3];

  Eval out;
  out.p = (w * w * w * p0 + (3.0 * u * u * u - 6.0 * u * u + 4.0) * p1 +
           (-3.0 * u * u * u + 3.0 * u * u + 3.0 * u + 1.0) * p2 + u * u * u * p3) /
          6.0;
  out.d1 = (-w * w * p0 + (3.0 * u * u - 4.0 * u) * p1 + (-3.0 * u * u + 2.0 * u + 1.0) * p2 +
            u * u * p3) /
           2.0;
  out.d2 = w * p0 + (3.0 * u - 2.0) * p1 + (-3.0 * u + 1.0) * p2 + u * p3;
  out.d3 = -p0 + 3.0 * p1 - 3.0 * p2 + p3;
  return out;
}

double parametric_curvature(const Vec2& d1, const Vec2& d2) {
  const double g = d1.squaredNorm();
  return (d1.x() * d2.y() - d1.y() * d2.x()) / std::pow(g, 1.5);
}

double parametric_curvature_rate(const Vec2& d1, const Vec2& d2, const Vec2& d3) {
  const double g = d1.squaredNorm();
  const double c = d1.x() * d2.y() - d1.y() * d2.x();
  const double c_dot = d1.x() * d3.y() - d1.y() * d3.x();
  const double g_dot = 2.0 * (d1.dot(d2));
  const double dk_dt = (c_dot * g - 1.5 * c * g_dot) / std::pow(g, 2.5);
  return dk_dt / std::sqrt(g);
}

}  // namespace fplan
