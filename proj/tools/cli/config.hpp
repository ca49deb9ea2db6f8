#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chiralg2/chiralg2.h"

namespace cg2cli {

/// Bad configuration or flags. Maps to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Detuning grid in units of kappa, plus the second axis of a map.
struct GridSpec {
  double dc_min = -2.0;
  double dc_max = 2.0;
  std::optional<int> dc_points;  // 201 for 1D, 41 for maps when unset
  std::string axis = "omega_31";
  std::optional<double> axis_min;
  std::optional<double> axis_max;
  int axis_points = 21;
};

struct RunConfig {
  std::string command;
  cg2_params params{};
  GridSpec grid;
  std::string output;
  bool analytic = true;
  int threads = 0;
  double min_log10_separation = 0.05;
  std::optional<double> g2_measured;
  std::string panel;
  std::vector<double> omega_32_list;  // units of kappa

  RunConfig() { cg2_params_default(&params); }
};

/// Parses "1.57", "pi", "pi/2", "-pi/4", "3*pi/2".
double parse_angle(const std::string& text);

/// Merges a JSON config file into `cfg`. Unknown keys and wrong types throw
/// InputError before anything is computed.
void load_config_file(const std::string& path, RunConfig& cfg);
void load_config_text(const std::string& text, RunConfig& cfg);

}  // namespace cg2cli
