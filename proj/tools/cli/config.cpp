#include "config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"

namespace cg2cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& known) {
  if (!obj.is_object()) throw InputError(where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (!known.contains(key)) throw InputError("unknown config key '" + where + "." + key + "'");
  }
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) throw InputError("config key '" + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InputError("config key '" + key + "' must be finite");
  return x;
}

int integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw InputError("config key '" + key + "' must be an integer");
  return v.get<int>();
}

std::string string(const json& v, const std::string& key) {
  if (!v.is_string()) throw InputError("config key '" + key + "' must be a string");
  return v.get<std::string>();
}

void apply_model(const json& m, cg2_params& p) {
  static const std::set<std::string> known = {
      "delta_c",  "delta_31", "delta_32",  "g",           "xi_p",
      "omega_31", "omega_32", "kappa",     "gamma_21",    "gamma_31",
      "gamma_32", "gamma_phi", "gamma_phi_21", "gamma_phi_31", "gamma_phi_32",
      "phi",      "n_c"};
  reject_unknown(m, "model", known);
  const struct {
    const char* key;
    double cg2_params::*field;
  } fields[] = {
      {"delta_c", &cg2_params::delta_c},         {"g", &cg2_params::g},
      {"xi_p", &cg2_params::xi_p},               {"omega_31", &cg2_params::omega_31},
      {"omega_32", &cg2_params::omega_32},       {"kappa", &cg2_params::kappa},
      {"gamma_21", &cg2_params::gamma_21},       {"gamma_31", &cg2_params::gamma_31},
      {"gamma_32", &cg2_params::gamma_32},       {"gamma_phi_21", &cg2_params::gamma_phi_21},
      {"gamma_phi_31", &cg2_params::gamma_phi_31}, {"gamma_phi_32", &cg2_params::gamma_phi_32},
  };
  if (m.contains("gamma_phi")) {
    const double r = number(m["gamma_phi"], "model.gamma_phi");
    p.gamma_phi_21 = p.gamma_phi_31 = p.gamma_phi_32 = r;
  }
  for (const auto& f : fields) {
    if (m.contains(f.key)) p.*f.field = number(m[f.key], std::string("model.") + f.key);
  }
  if (m.contains("delta_31") || m.contains("delta_32")) {
    p.resonant = 0;
    p.delta_31 = m.contains("delta_31") ? number(m["delta_31"], "model.delta_31") : 0.0;
    p.delta_32 = m.contains("delta_32") ? number(m["delta_32"], "model.delta_32") : 0.0;
  }
  if (m.contains("phi")) {
    const json& v = m["phi"];
    p.phi = v.is_string() ? parse_angle(v.get<std::string>()) : number(v, "model.phi");
  }
  if (m.contains("n_c")) p.n_c = integer(m["n_c"], "model.n_c");
}

void apply_grid(const json& g, GridSpec& grid) {
  reject_unknown(g, "grid",
                 {"dc_min", "dc_max", "dc_points", "axis", "axis_min", "axis_max", "axis_points"});
  if (g.contains("dc_min")) grid.dc_min = number(g["dc_min"], "grid.dc_min");
  if (g.contains("dc_max")) grid.dc_max = number(g["dc_max"], "grid.dc_max");
  if (g.contains("dc_points")) grid.dc_points = integer(g["dc_points"], "grid.dc_points");
  if (g.contains("axis")) grid.axis = string(g["axis"], "grid.axis");
  if (g.contains("axis_min")) grid.axis_min = number(g["axis_min"], "grid.axis_min");
  if (g.contains("axis_max")) grid.axis_max = number(g["axis_max"], "grid.axis_max");
  if (g.contains("axis_points")) grid.axis_points = integer(g["axis_points"], "grid.axis_points");
}

}  // namespace

double parse_angle(const std::string& text) {
  static const std::regex pi_form(R"(\s*([+-]?)\s*(?:([0-9]*\.?[0-9]+)\s*\*\s*)?pi\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*)");
  std::smatch m;
  if (std::regex_match(text, m, pi_form)) {
    double v = std::numbers::pi;
    if (m[2].matched) v *= std::stod(m[2].str());
    if (m[3].matched) {
      const double den = std::stod(m[3].str());
      if (den == 0.0) throw InputError("angle '" + text + "' divides by zero");
      v /= den;
    }
    return m[1].str() == "-" ? -v : v;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InputError("cannot parse angle '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw InputError("cannot parse angle '" + text + "'");
  return v;
}

void load_config_text(const std::string& text, RunConfig& cfg) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(root, "config",
                 {"command", "model", "grid", "output", "analytic", "threads", "discrimination",
                  "panel", "omega_32_list"});
  if (root.contains("command")) cfg.command = string(root["command"], "command");
  if (root.contains("model")) apply_model(root["model"], cfg.params);
  if (root.contains("grid")) apply_grid(root["grid"], cfg.grid);
  if (root.contains("output")) cfg.output = string(root["output"], "output");
  if (root.contains("analytic")) {
    if (!root["analytic"].is_boolean()) throw InputError("config key 'analytic' must be a boolean");
    cfg.analytic = root["analytic"].get<bool>();
  }
  if (root.contains("threads")) cfg.threads = integer(root["threads"], "threads");
  if (root.contains("discrimination")) {
    const json& d = root["discrimination"];
    reject_unknown(d, "discrimination", {"g2", "min_log10_separation"});
    if (d.contains("g2")) cfg.g2_measured = number(d["g2"], "discrimination.g2");
    if (d.contains("min_log10_separation")) {
      cfg.min_log10_separation =
          number(d["min_log10_separation"], "discrimination.min_log10_separation");
    }
  }
  if (root.contains("panel")) cfg.panel = string(root["panel"], "panel");
  if (root.contains("omega_32_list")) {
    const json& l = root["omega_32_list"];
    if (!l.is_array()) throw InputError("config key 'omega_32_list' must be an array");
    cfg.omega_32_list.clear();
    for (const json& v : l) cfg.omega_32_list.push_back(number(v, "omega_32_list[]"));
  }
}

void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  load_config_text(buf.str(), cfg);
}

}  // namespace cg2cli
