#pragma once

#include <string>
#include <vector>

#include "fplan/planner.hpp"
#include "fplan/scenario.hpp"
#include "fplan/sim.hpp"

namespace fplan {

/// Minimal SVG assembler with a world-to-view transform (y up).
class SvgWriter {
 public:
  SvgWriter(double min_x, double min_y, double max_x, double max_y, double scale = 4.0);

  void polyline(const std::vector<Vec2>& points, const std::string& color, double width,
                double opacity = 1.0);
  void polygon(const std::vector<Vec2>& points, const std::string& fill, const std::string& stroke);
  void circle(const Vec2& center, double radius, const std::string& fill);
  void text(const Vec2& anchor, const std::string& content, double size);

  std::string str() const;

 private:
  double tx(double x) const { return (x - min_x_) * scale_; }
  double ty(double y) const { return (max_y_ - y) * scale_; }

  double min_x_, min_y_, max_x_, max_y_, scale_;
  std::string body_;
};

/// One planning cycle: road, obstacles at the cycle step, every sample (gray
/// when kinematically infeasible, cost-ranked color otherwise), chosen sample
/// in black. Requires a PlanResult that kept its samples.
std::string render_fan_svg(const Scenario& scenario, const PlanResult& result, int step);

/// Executed trajectories of several runs over the road, with elapsed-second
/// labels along each curve.
std::string render_runs_svg(const Scenario& scenario,
                            const std::vector<std::pair<std::string, const RunLog*>>& runs,
                            double dt);

}  // namespace fplan
