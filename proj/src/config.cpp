#include "fplan/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fplan/errors.hpp"

namespace fplan {
namespace {

using nlohmann::json;

}  // namespace

AppConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open config file: " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_config_string(buffer.str());
}

AppConfig load_config_string(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }

  AppConfig config;
  try {
    if (root.contains("weights")) {
      for (const auto& [key, value] : root.at("weights").items()) {
        const auto kind = cost_kind_from_name(key);
        if (!kind) {
          throw ValidationError("unknown cost weight: " + key);
        }
        const double w = value.get<double>();
        if (!(w >= 0.0) || !std::isfinite(w)) {
          throw ValidationError("cost weight " + key + " must be finite and non-negative");
        }
        config.weights[*kind] = w;
      }
    }
    if (root.contains("vehicle")) {
      const json& v = root.at("vehicle");
      VehicleParams& p = config.vehicle;
      p.length = v.value("length", p.length);
      p.width = v.value("width", p.width);
      p.wheelbase = v.value("wheelbase", p.wheelbase);
      p.delta_max = v.value("delta_max", p.delta_max);
      p.a_max = v.value("a_max", p.a_max);
      p.v_switch = v.value("v_switch", p.v_switch);
      p.kappa_dot_max = v.value("kappa_dot_max", p.kappa_dot_max);
      if (p.length <= 0 || p.width <= 0 || p.wheelbase <= 0 || p.delta_max <= 0 ||
          p.delta_max >= 1.5707963267948966 || p.a_max <= 0 || p.v_switch <= 0 ||
          p.kappa_dot_max <= 0) {
        throw ValidationError("vehicle parameters must be positive (delta_max below pi/2)");
      }
    }
    if (root.contains("sim")) {
      const json& s = root.at("sim");
      SimConfig& c = config.sim;
      c.replan_every = s.value("replan_every", c.replan_every);
      c.density = s.value("density", c.density);
      c.T = s.value("T", c.T);
      c.target_velocity = s.value("target_velocity", c.target_velocity);
      c.grace_steps = s.value("grace_steps", c.grace_steps);
      c.d_min = s.value("d_min", c.d_min);
      c.d_max = s.value("d_max", c.d_max);
      c.harm = s.value("harm", c.harm);
      c.use_predictions = s.value("use_predictions", c.use_predictions);
      c.parallel = s.value("parallel", c.parallel);
      if (s.contains("grid")) {
        const json& g = s.at("grid");
        c.grid_override = {g.at(0).get<int>(), g.at(1).get<int>(), g.at(2).get<int>()};
      }
    }
    if (root.contains("prediction")) {
      const json& p = root.at("prediction");
      PredictionConfig& c = config.sim.prediction;
      c.sigma0_lon = p.value("sigma0_lon", c.sigma0_lon);
      c.sigma0_lat = p.value("sigma0_lat", c.sigma0_lat);
      c.q_lon = p.value("q_lon", c.q_lon);
      c.q_lat = p.value("q_lat", c.q_lat);
      c.static_sigma = p.value("static_sigma", c.static_sigma);
    }
    if (root.contains("spline")) {
      const json& s = root.at("spline");
      SplineConfig& c = config.sim.spline;
      c.smoothing_factor = s.value("smoothing_factor", c.smoothing_factor);
      c.ctrl_spacing = s.value("ctrl_spacing", c.ctrl_spacing);
      c.sample_spacing = s.value("sample_spacing", c.sample_spacing);
      c.extend_back = s.value("extend_back", c.extend_back);
      c.extend_front = s.value("extend_front", c.extend_front);
      c.curvature_rate_bound = s.value("curvature_rate_bound", c.curvature_rate_bound);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("config does not match the schema: ") + e.what());
  }
  return config;
}

std::string serialize_config(const AppConfig& config) {
  json root;
  for (std::size_t i = 0; i < kCostKindCount; ++i) {
    root["weights"][std::string(cost_kind_name(static_cast<CostKind>(i)))] =
        config.weights.values[i];
  }
  const VehicleParams& p = config.vehicle;
  root["vehicle"] = {{"length", p.length},       {"width", p.width},
                     {"wheelbase", p.wheelbase}, {"delta_max", p.delta_max},
                     {"a_max", p.a_max},         {"v_switch", p.v_switch},
                     {"kappa_dot_max", p.kappa_dot_max}};
  const SimConfig& c = config.sim;
  root["sim"] = {{"replan_every", c.replan_every},
                 {"density", c.density},
                 {"T", c.T},
                 {"target_velocity", c.target_velocity},
                 {"grace_steps", c.grace_steps},
                 {"d_min", c.d_min},
                 {"d_max", c.d_max},
                 {"harm", c.harm},
                 {"use_predictions", c.use_predictions},
                 {"parallel", c.parallel}};
  if (c.grid_override) {
    root["sim"]["grid"] = {(*c.grid_override)[0], (*c.grid_override)[1], (*c.grid_override)[2]};
  }
  const PredictionConfig& pr = c.prediction;
  root["prediction"] = {{"sigma0_lon", pr.sigma0_lon},
                        {"sigma0_lat", pr.sigma0_lat},
                        {"q_lon", pr.q_lon},
                        {"q_lat", pr.q_lat},
                        {"static_sigma", pr.static_sigma}};
  const SplineConfig& sp = c.spline;
  root["spline"] = {{"smoothing_factor", sp.smoothing_factor},
                    {"ctrl_spacing", sp.ctrl_spacing},
                    {"sample_spacing", sp.sample_spacing},
                    {"extend_back", sp.extend_back},
                    {"extend_front", sp.extend_front},
                    {"curvature_rate_bound", sp.curvature_rate_bound}};
  return root.dump(2);
}

}  // namespace fplan
