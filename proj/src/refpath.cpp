#include "fplan/refpath.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "fplan/errors.hpp"
#include "fplan/spline.hpp"

namespace fplan {
namespace {

constexpr double kLaneChangePenalty = 5.0;

double orient(const Vec2& a, const Vec2& b, const Vec2& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  if (std::abs(orient(a, b, p)) > 1e-9 * std::max(1.0, (b - a).norm())) return false;
  return p.x() >= std::min(a.x(), b.x()) - 1e-9 && p.x() <= std::max(a.x(), b.x()) + 1e-9 &&
         p.y() >= std::min(a.y(), b.y()) - 1e-9 && p.y() <= std::max(a.y(), b.y()) + 1e-9;
}

bool segments_intersect(const Vec2& a1, const Vec2& a2, const Vec2& b1, const Vec2& b2) {
  const double o1 = orient(a1, a2, b1);
  const double o2 = orient(a1, a2, b2);
  const double o3 = orient(b1, b2, a1);
  const double o4 = orient(b1, b2, a2);
  if ((o1 > 0.0) != (o2 > 0.0) && (o3 > 0.0) != (o4 > 0.0)) return true;
  return on_segment(a1, a2, b1) || on_segment(a1, a2, b2) || on_segment(b1, b2, a1) ||
         on_segment(b1, b2, a2);
}

bool polygons_intersect(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  for (const auto& p : a) {
    if (point_in_polygon(p, b)) return true;
  }
  for (const auto& p : b) {
    if (point_in_polygon(p, a)) return true;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (segments_intersect(a[i], a[(i + 1) % a.size()], b[j], b[(j + 1) % b.size()])) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace

std::vector<int> plan_route(const Scenario& scenario) {
  const auto& lanelets = scenario.lanelets;
  const std::size_t n = lanelets.size();
  std::unordered_map<int, std::size_t> index;
  std::vector<double> length(n);
  std::vector<std::vector<Vec2>> polygons(n);
  for (std::size_t i = 0; i < n; ++i) {
    index[lanelets[i].id] = i;
    length[i] = lanelets[i].center_length();
    polygons[i] = lanelets[i].polygon();
  }

  const Vec2 start_pos = scenario.problem.initial.position();
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < n; ++i) {
    if (point_in_polygon(start_pos, polygons[i])) starts.push_back(i);
  }
  if (starts.empty()) {
    throw NoRouteError("initial position is not on any lanelet");
  }
  std::vector<bool> is_goal(n, false);
  bool any_goal = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (polygons_intersect(polygons[i], scenario.problem.goal_polygon)) {
      is_goal[i] = true;
      any_goal = true;
    }
  }
  if (!any_goal) {
    throw NoRouteError("goal region does not intersect any lanelet");
  }

  // Edge u->v costs the entered lanelet's center length, plus a fixed penalty
  // for lane changes; a full route then costs the sum of its lanelet lengths
  // plus the penalties.
  struct Edge {
    std::size_t to;
    double weight;
  };
  std::vector<std::vector<Edge>> forward(n), backward(n);
  for (std::size_t u = 0; u < n; ++u) {
    auto add = [&](int id, double penalty) {
      const std::size_t v = index.at(id);
      forward[u].push_back({v, length[v] + penalty});
      backward[v].push_back({u, length[v] + penalty});
    };
    for (int succ : lanelets[u].successors) add(succ, 0.0);
    if (lanelets[u].adjacent_left) add(*lanelets[u].adjacent_left, kLaneChangePenalty);
    if (lanelets[u].adjacent_right) add(*lanelets[u].adjacent_right, kLaneChangePenalty);
  }

  // Cost-to-goal for every lanelet, excluding its own length.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (is_goal[i]) {
      dist[i] = 0.0;
      queue.push({0.0, i});
    }
  }
  while (!queue.empty()) {
    const auto [du, u] = queue.top();
    queue.pop();
    if (du > dist[u]) continue;
    for (const Edge& e : backward[u]) {
      const double candidate = e.weight + du;
      if (candidate < dist[e.to]) {
        dist[e.to] = candidate;
        queue.push({candidate, e.to});
      }
    }
  }

  std::size_t current = n;
  double best = kInf;
  for (std::size_t s : starts) {
    const double cost = length[s] + dist[s];
    if (cost < best - 1e-9 ||
        (cost < best + 1e-9 && (current == n || lanelets[s].id < lanelets[current].id))) {
      best = cost;
      current = s;
    }
  }
  if (current == n || !std::isfinite(best)) {
    throw NoRouteError("goal region is unreachable from the start lanelet");
  }

  // Walk tight edges greedily; smallest id first yields the lexicographically
  // smallest minimal route.
  std::vector<int> route{lanelets[current].id};
  while (!is_goal[current]) {
    std::size_t next = n;
    for (const Edge& e : forward[current]) {
      if (e.weight + dist[e.to] <= dist[current] + 1e-9) {
        if (next == n || lanelets[e.to].id < lanelets[next].id) next = e.to;
      }
    }
    if (next == n) {
      throw NoRouteError("route reconstruction failed");
    }
    current = next;
    route.push_back(lanelets[current].id);
  }
  return route;
}

ReferencePath build_reference_path(const Scenario& scenario, const std::vector<int>& route,
                                   const SplineConfig& config) {
  std::vector<Vec2> raw;
  for (int id : route) {
    const Lanelet* lanelet = scenario.find_lanelet(id);
    if (!lanelet) {
      throw ValidationError("route references unknown lanelet " + std::to_string(id));
    }
    for (const Vec2& p : lanelet->center) {
      if (raw.empty() || (p - raw.back()).norm() > 1e-9) raw.push_back(p);
    }
  }
  return build_reference_path_from_points(raw, config);
}

ReferencePath build_reference_path_from_points(const std::vector<Vec2>& points,
                                               const SplineConfig& config) {
  std::vector<Vec2> pts;
  for (const Vec2& p : points) {
    if (pts.empty() || (p - pts.back()).norm() > 1e-9) pts.push_back(p);
  }
  int distinct = 0;
  for (std::size_t i = 0; i < pts.size() && distinct < 4; ++i) {
    bool seen = false;
    for (std::size_t j = 0; j < i && !seen; ++j) {
      seen = (pts[i] - pts[j]).norm() <= 1e-9;
    }
    if (!seen) ++distinct;
  }
  if (distinct < 4) {
    throw DegenerateRouteError("reference line needs at least 4 distinct points");
  }

  auto extend = [](std::vector<Vec2>& line, double amount, bool front) {
    if (amount <= 0.0) return;
    const int steps = std::max(1, static_cast<int>(std::ceil(amount)));
    const double step = amount / steps;
    if (front) {
      const Vec2 dir = (line[1] - line[0]).normalized();
      std::vector<Vec2> head;
      for (int k = steps; k >= 1; --k) head.push_back(line[0] - k * step * dir);
      line.insert(line.begin(), head.begin(), head.end());
    } else {
      const Vec2 dir = (line[line.size() - 1] - line[line.size() - 2]).normalized();
      const Vec2 base = line.back();
      for (int k = 1; k <= steps; ++k) line.push_back(base + k * step * dir);
    }
  };
  extend(pts, config.extend_back, true);
  extend(pts, config.extend_front, false);

  const double lambda = config.smoothing_factor * static_cast<double>(pts.size());
  const SmoothingSpline spline(pts, lambda, config.ctrl_spacing);
  const double segments = spline.segment_count();

  double est_total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) est_total += (pts[i] - pts[i - 1]).norm();
  const int n_fine =
      std::max({static_cast<int>(std::ceil(est_total * 20.0)), static_cast<int>(segments) * 2, 10});
  std::vector<double> fine_t(static_cast<std::size_t>(n_fine) + 1);
  std::vector<double> fine_s(static_cast<std::size_t>(n_fine) + 1, 0.0);
  Vec2 prev = spline.eval(0.0).p;
  for (int i = 0; i <= n_fine; ++i) {
    fine_t[static_cast<std::size_t>(i)] = segments * i / n_fine;
    const Vec2 p = spline.eval(fine_t[static_cast<std::size_t>(i)]).p;
    if (i > 0) {
      fine_s[static_cast<std::size_t>(i)] = fine_s[static_cast<std::size_t>(i) - 1] + (p - prev).norm();
    }
    prev = p;
  }
  const double total = fine_s.back();

  ReferencePath path;
  const int n_out = std::max(2, static_cast<int>(std::ceil(total / config.sample_spacing))) + 1;
  path.points.reserve(static_cast<std::size_t>(n_out));
  path.theta.reserve(static_cast<std::size_t>(n_out));
  path.kappa.reserve(static_cast<std::size_t>(n_out));
  path.kappa_prime.reserve(static_cast<std::size_t>(n_out));
  std::size_t cursor = 0;
  for (int k = 0; k < n_out; ++k) {
    const double target = total * k / (n_out - 1);
    while (cursor + 1 < fine_s.size() && fine_s[cursor + 1] < target) ++cursor;
    const double span = fine_s[cursor + 1] - fine_s[cursor];
    const double u = span > 0.0 ? (target - fine_s[cursor]) / span : 0.0;
    const double t = fine_t[cursor] + u * (fine_t[cursor + 1] - fine_t[cursor]);
    const auto e = spline.eval(t);
    path.points.push_back(e.p);
    const double heading = std::atan2(e.d1.y(), e.d1.x());
    if (path.theta.empty()) {
      path.theta.push_back(heading);
    } else {
      path.theta.push_back(path.theta.back() + normalize_angle(heading - path.theta.back()));
    }
    path.kappa.push_back(parametric_curvature(e.d1, e.d2));
    path.kappa_prime.push_back(parametric_curvature_rate(e.d1, e.d2, e.d3));
  }
  path.s.resize(path.points.size(), 0.0);
  for (std::size_t i = 1; i < path.points.size(); ++i) {
    path.s[i] = path.s[i - 1] + (path.points[i] - path.points[i - 1]).norm();
  }

  for (std::size_t i = 1; i < path.kappa.size(); ++i) {
    const double ds = path.s[i] - path.s[i - 1];
    if (std::abs(path.kappa[i] - path.kappa[i - 1]) > config.curvature_rate_bound * ds) {
      throw ValidationError("reference path curvature exceeds the smoothness bound near s=" +
                            std::to_string(path.s[i]));
    }
  }
  return path;
}

ReferencePath::Sample ReferencePath::sample_at(double arc_length) const {
  const double q = std::clamp(arc_length, s.front(), s.back());
  const auto it = std::upper_bound(s.begin(), s.end(), q);
  const std::size_t hi = std::min(static_cast<std::size_t>(it - s.begin()), s.size() - 1);
  const std::size_t lo = hi > 0 ? hi - 1 : 0;
  const double span = s[hi] - s[lo];
  const double u = span > 0.0 ? (q - s[lo]) / span : 0.0;
  Sample out;
  out.position = points[lo] + u * (points[hi] - points[lo]);
  out.theta = theta[lo] + u * (theta[hi] - theta[lo]);
  out.kappa = kappa[lo] + u * (kappa[hi] - kappa[lo]);
  out.kappa_prime = kappa_prime[lo] + u * (kappa_prime[hi] - kappa_prime[lo]);
  return out;
}

double ReferencePath::project(const Vec2& query) const {
  std::size_t nearest = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d2 = (points[i] - query).squaredNorm();
    if (d2 < best) {
      best = d2;
      nearest = i;
    }
  }

  double s_star = s[nearest];
  double best_dist = std::numeric_limits<double>::infinity();
  const std::size_t lo = nearest > 0 ? nearest - 1 : nearest;
  const std::size_t hi = std::min(nearest + 1, points.size() - 1);
  for (std::size_t i = lo; i < hi; ++i) {
    const Vec2 a = points[i];
    const Vec2 ab = points[i + 1] - a;
    const double len2 = ab.squaredNorm();
    const double u = len2 > 0.0 ? std::clamp((query - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    const Vec2 foot = a + u * ab;
    const double dist = (query - foot).norm();
    const double s_cand = s[i] + u * std::sqrt(len2);
    if (dist < best_dist - 1e-12 || (dist < best_dist + 1e-12 && s_cand < s_star)) {
      best_dist = dist;
      s_star = s_cand;
    }
  }

  for (int iter = 0; iter < 30; ++iter) {
    const Sample ref = sample_at(s_star);
    const Vec2 tangent(std::cos(ref.theta), std::sin(ref.theta));
    const Vec2 normal(-std::sin(ref.theta), std::cos(ref.theta));
    const Vec2 delta = query - ref.position;
    const double denom = 1.0 - delta.dot(normal) * ref.kappa;
    if (denom < 0.1) break;
    const double step = delta.dot(tangent) / denom;
    s_star = std::clamp(s_star + step, s.front(), s.back());
    if (std::abs(step) < 1e-12) break;
  }

  if (s_star <= s.front() + 1e-9 || s_star >= s.back() - 1e-9) {
    throw ProjectionError("position projects onto a reference path endpoint");
  }
  return s_star;
}

FrenetState ReferencePath::to_frenet(const CartesianState& state) const {
  const double s_star = project(state.position());
  const Sample ref = sample_at(s_star);
  const Vec2 normal(-std::sin(ref.theta), std::cos(ref.theta));
  const double d = (state.position() - ref.position).dot(normal);
  if (std::abs(d * ref.kappa) >= 1.0) {
    throw SingularityError("lateral offset reaches the curvature center of the reference path");
  }
  const double one_kd = 1.0 - ref.kappa * d;
  const double delta_theta = normalize_angle(state.psi - ref.theta);
  const double cos_dt = std::cos(delta_theta);
  const double tan_dt = std::tan(delta_theta);

  const double d_prime = one_kd * tan_dt;
  const double shared = ref.kappa_prime * d + ref.kappa * d_prime;
  const double delta_theta_prime = one_kd / cos_dt * state.kappa - ref.kappa;
  const double d_pprime = -shared * tan_dt + one_kd / (cos_dt * cos_dt) *
                                                  (state.kappa * one_kd / cos_dt - ref.kappa);

  FrenetState out;
  out.s = s_star;
  out.d = d;
  out.s_dot = state.v * cos_dt / one_kd;
  out.d_dot = state.v * std::sin(delta_theta);
  out.s_ddot =
      (state.a * cos_dt - out.s_dot * out.s_dot * (d_prime * delta_theta_prime - shared)) / one_kd;
  out.d_ddot = d_pprime * out.s_dot * out.s_dot + d_prime * out.s_ddot;
  return out;
}

CartesianState ReferencePath::to_cartesian(const FrenetState& fstate) const {
  if (fstate.s < s.front() - 1e-9 || fstate.s > s.back() + 1e-9) {
    throw ProjectionError("arc length outside the reference path");
  }
  const Sample ref = sample_at(fstate.s);
  if (std::abs(fstate.d * ref.kappa) >= 1.0) {
    throw SingularityError("lateral offset reaches the curvature center of the reference path");
  }
  const double one_kd = 1.0 - ref.kappa * fstate.d;

  double d_prime = 0.0;
  double d_pprime = 0.0;
  if (std::abs(fstate.s_dot) > 1e-9) {
    d_prime = fstate.d_dot / fstate.s_dot;
    d_pprime = (fstate.d_ddot - d_prime * fstate.s_ddot) / (fstate.s_dot * fstate.s_dot);
  }

  const double delta_theta = std::atan2(d_prime, one_kd);
  const double cos_dt = std::cos(delta_theta);
  const double tan_dt = d_prime / one_kd;
  const Vec2 normal(-std::sin(ref.theta), std::cos(ref.theta));
  const double shared = ref.kappa_prime * fstate.d + ref.kappa * d_prime;

  CartesianState out;
  const Vec2 position = ref.position + fstate.d * normal;
  out.x = position.x();
  out.y = position.y();
  out.psi = normalize_angle(ref.theta + delta_theta);
  out.v = fstate.s_dot * one_kd / cos_dt;
  out.kappa = ((d_pprime + shared * tan_dt) * cos_dt * cos_dt / one_kd + ref.kappa) * cos_dt / one_kd;
  const double delta_theta_prime = one_kd / cos_dt * out.kappa - ref.kappa;
  out.a = (fstate.s_ddot * one_kd +
           fstate.s_dot * fstate.s_dot * (d_prime * delta_theta_prime - shared)) /
          cos_dt;
  return out;
}

std::string ReferencePath::dump_csv() const {
  std::ostringstream out;
  out << "s,x,y,theta,kappa\n" << std::setprecision(12);
  for (std::size_t i = 0; i < points.size(); ++i) {
    out << s[i] << ',' << points[i].x() << ',' << points[i].y() << ',' << theta[i] << ','
        << kappa[i] << '\n';
  }
  return out.str();
}

}  // namespace fplan
