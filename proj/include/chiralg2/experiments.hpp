#pragma once

// Detuning sweeps, 2D maps, bunching-peak location and the chirality verdict.
//
// Every sweep point applies the resonance convention delta_32 = 0,
// delta_31 = delta_c before solving both enantiomers.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chiralg2/model.hpp"

namespace chiralg2 {

struct SweepRecord {
  std::optional<double> g2_L_numeric;
  std::optional<double> g2_R_numeric;
  std::optional<double> g2_L_analytic;
  std::optional<double> g2_R_analytic;
  double p11_L = 0.0, p12_L = 0.0;
  double p11_R = 0.0, p12_R = 0.0;
  double nbar_L = 0.0, nbar_R = 0.0;
  double residual_L = 0.0, residual_R = 0.0;
  /// Steady-state solve failed for at least one enantiomer.
  bool flagged = false;

  const std::optional<double>& g2_numeric(Chirality ch) const {
    return ch == Chirality::L ? g2_L_numeric : g2_R_numeric;
  }
  const std::optional<double>& g2_analytic(Chirality ch) const {
    return ch == Chirality::L ? g2_L_analytic : g2_R_analytic;
  }
  double p11(Chirality ch) const { return ch == Chirality::L ? p11_L : p11_R; }
};

/// Grid values are stored in rad/us; `kappa` lets writers report them in
/// units of kappa. Records are laid out with axis2 as the slow index:
/// record(i1, i2) = records[i2 * axis1.size() + i1].
struct SweepResult {
  std::string axis1_name = "delta_c";
  std::vector<double> axis1;
  std::optional<std::string> axis2_name;
  std::vector<double> axis2;
  std::vector<SweepRecord> records;
  double kappa = 1.0;

  bool is_2d() const noexcept { return axis2_name.has_value(); }
  const SweepRecord& at(std::size_t i1, std::size_t i2 = 0) const {
    return records.at(i2 * axis1.size() + i1);
  }
  std::size_t flagged_count() const;
};

enum class SecondAxis { Omega31, GammaPhi };

const char* axis_name(SecondAxis axis) noexcept;

/// `threads` <= 1 runs serially. Output is identical for any thread count.
SweepResult sweep_detuning(const ModelParams& p, std::span<const double> dc_grid,
                           bool include_analytic, int threads = 1);

/// Numeric-only map over (delta_c, axis). GammaPhi sets all three dephasing
/// rates to the axis value.
SweepResult sweep_2d(const ModelParams& p, std::span<const double> dc_grid, SecondAxis axis,
                     std::span<const double> axis_grid, int threads = 1);

struct Peak {
  double delta_c;
  double g2;
  std::size_t grid_index;
};

/// Global maximum of the numeric g2 curve for `ch`, refined with a
/// three-point parabola when it is an interior point. Throws NoPeakError
/// unless the maximum exceeds 1.
Peak locate_bunching_peak(const SweepResult& result, Chirality ch);

/// Vertex of the parabola through three points; returns {x1, y1} if they are
/// collinear.
std::pair<double, double> parabolic_vertex(double x0, double y0, double x1, double y1, double x2,
                                           double y2);

/// Delta_c of the interior local minimum of P_|1,1> closest to `delta_c`.
/// Throws NoPeakError if the curve has no interior local minimum.
double nearest_p11_dip(const SweepResult& result, Chirality ch, double delta_c);

enum class Call { L, R, Inconclusive };

inline const char* to_string(Call c) noexcept {
  switch (c) {
    case Call::L: return "L";
    case Call::R: return "R";
    default: return "inconclusive";
  }
}

struct Verdict {
  Call call = Call::Inconclusive;
  /// log10 separation of the predictions minus the measurement's log10
  /// distance to the nearer one.
  double margin = 0.0;
  double g2_L = 0.0;
  double g2_R = 0.0;
};

struct DiscriminationPolicy {
  double min_log10_separation = 0.05;
};

/// Compares a measured g2 with the numeric predictions for both enantiomers at
/// `p` (used as given; no resonance convention is applied).
Verdict discriminate(double g2_measured, const ModelParams& p,
                     const DiscriminationPolicy& policy = {});

std::vector<double> linspace(double first, double last, std::size_t count);

/// 201 points over [-2 kappa, 2 kappa].
std::vector<double> default_detuning_grid(double kappa);

}  // namespace chiralg2
