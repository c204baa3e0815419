#include "fplan/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fplan/collision.hpp"

namespace fplan {
namespace {

void scenario_bounds(const Scenario& scenario, double& min_x, double& min_y, double& max_x,
                     double& max_y) {
  min_x = min_y = std::numeric_limits<double>::infinity();
  max_x = max_y = -min_x;
  const auto take = [&](const Vec2& p) {
    min_x = std::min(min_x, p.x());
    min_y = std::min(min_y, p.y());
    max_x = std::max(max_x, p.x());
    max_y = std::max(max_y, p.y());
  };
  for (const Lanelet& lanelet : scenario.lanelets) {
    for (const Vec2& p : lanelet.left) take(p);
    for (const Vec2& p : lanelet.right) take(p);
  }
  for (const Vec2& p : scenario.problem.goal_polygon) take(p);
  min_x -= 5.0;
  min_y -= 5.0;
  max_x += 5.0;
  max_y += 5.0;
}

std::string rank_color(std::size_t rank, std::size_t total) {
  const double u = total > 1 ? static_cast<double>(rank) / static_cast<double>(total - 1) : 0.0;
  const int r = static_cast<int>(std::lround(40.0 + 200.0 * u));
  const int g = static_cast<int>(std::lround(180.0 - 140.0 * u));
  std::ostringstream out;
  out << "rgb(" << r << ',' << g << ",60)";
  return out.str();
}

void draw_scene(SvgWriter& svg, const Scenario& scenario, int step) {
  for (const Lanelet& lanelet : scenario.lanelets) {
    svg.polygon(lanelet.polygon(), "#e8e8e8", "#b0b0b0");
  }
  svg.polygon(scenario.problem.goal_polygon, "#cde8cd", "#4a8a4a");
  for (const Obstacle& obstacle : scenario.obstacles) {
    const CartesianState state = obstacle_state_at(obstacle, step, scenario.dt);
    const auto corners = footprint_obb(state, obstacle.length, obstacle.width).corners();
    svg.polygon({corners.begin(), corners.end()}, "#5577aa", "#223355");
  }
}

std::vector<Vec2> sample_polyline(const TrajectorySample& sample) {
  std::vector<Vec2> points;
  points.reserve(sample.states.size());
  for (const CartesianState& state : sample.states) points.push_back(state.position());
  return points;
}

}  // namespace

SvgWriter::SvgWriter(double min_x, double min_y, double max_x, double max_y, double scale)
    : min_x_(min_x), min_y_(min_y), max_x_(max_x), max_y_(max_y), scale_(scale) {}

void SvgWriter::polyline(const std::vector<Vec2>& points, const std::string& color, double width,
                         double opacity) {
  std::ostringstream out;
  out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width
      << "\" stroke-opacity=\"" << opacity << "\" points=\"";
  for (const Vec2& p : points) out << tx(p.x()) << ',' << ty(p.y()) << ' ';
  out << "\"/>\n";
  body_ += out.str();
}

void SvgWriter::polygon(const std::vector<Vec2>& points, const std::string& fill,
                        const std::string& stroke) {
  std::ostringstream out;
  out << "<polygon fill=\"" << fill << "\" stroke=\"" << stroke << "\" points=\"";
  for (const Vec2& p : points) out << tx(p.x()) << ',' << ty(p.y()) << ' ';
  out << "\"/>\n";
  body_ += out.str();
}

void SvgWriter::circle(const Vec2& center, double radius, const std::string& fill) {
  std::ostringstream out;
  out << "<circle cx=\"" << tx(center.x()) << "\" cy=\"" << ty(center.y()) << "\" r=\""
      << radius * scale_ << "\" fill=\"" << fill << "\"/>\n";
  body_ += out.str();
}

void SvgWriter::text(const Vec2& anchor, const std::string& content, double size) {
  std::ostringstream out;
  out << "<text x=\"" << tx(anchor.x()) << "\" y=\"" << ty(anchor.y()) << "\" font-size=\"" << size
      << "\" font-family=\"sans-serif\">" << content << "</text>\n";
  body_ += out.str();
}

std::string SvgWriter::str() const {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (max_x_ - min_x_) * scale_
      << "\" height=\"" << (max_y_ - min_y_) * scale_ << "\">\n"
      << body_ << "</svg>\n";
  return out.str();
}

std::string render_fan_svg(const Scenario& scenario, const PlanResult& result, int step) {
  double min_x, min_y, max_x, max_y;
  scenario_bounds(scenario, min_x, min_y, max_x, max_y);
  SvgWriter svg(min_x, min_y, max_x, max_y);
  draw_scene(svg, scenario, step);

  std::vector<const TrajectorySample*> feasible;
  for (const TrajectorySample& sample : result.samples) {
    if (sample.feasible() && sample.costed) {
      feasible.push_back(&sample);
    } else {
      svg.polyline(sample_polyline(sample), "#999999", 0.6, 0.5);
    }
  }
  std::sort(feasible.begin(), feasible.end(),
            [](const TrajectorySample* a, const TrajectorySample* b) {
              return a->total_cost < b->total_cost;
            });
  for (std::size_t i = 0; i < feasible.size(); ++i) {
    svg.polyline(sample_polyline(*feasible[i]), rank_color(i, feasible.size()), 0.8, 0.8);
  }
  svg.polyline(sample_polyline(result.chosen), "#000000", 1.6);
  return svg.str();
}

std::string render_runs_svg(const Scenario& scenario,
                            const std::vector<std::pair<std::string, const RunLog*>>& runs,
                            double dt) {
  double min_x, min_y, max_x, max_y;
  scenario_bounds(scenario, min_x, min_y, max_x, max_y);
  SvgWriter svg(min_x, min_y, max_x, max_y);
  draw_scene(svg, scenario, 0);

  const char* palette[] = {"#c0392b", "#2980b9", "#27ae60", "#8e44ad", "#d35400", "#16a085"};
  const int steps_per_second = std::max(1, static_cast<int>(std::lround(1.0 / dt)));
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const RunLog& log = *runs[i].second;
    std::vector<Vec2> points;
    points.reserve(log.steps.size());
    for (const StepRecord& record : log.steps) points.push_back(record.state.position());
    const std::string color = palette[i % 6];
    svg.polyline(points, color, 1.2, 0.9);
    for (std::size_t k = 0; k < log.steps.size(); k += steps_per_second) {
      const Vec2 p = log.steps[k].state.position();
      svg.circle(p, 0.3, color);
      svg.text(p + Vec2(0.5, 0.8), std::to_string(k / steps_per_second), 9.0);
    }
    if (!runs[i].first.empty()) {
      svg.text(Vec2(min_x + 2.0, max_y - 3.0 - 3.0 * static_cast<double>(i)), runs[i].first, 11.0);
    }
  }
  return svg.str();
}

}  // namespace fplan
