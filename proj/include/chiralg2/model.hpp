#pragma once

// Physical model of one chiral molecule in a driven cavity: parameters,
// enantiomer phase, rotating-frame Hamiltonian, collapse channels and the
// effective non-Hermitian Hamiltonian.
//
// Units: every frequency and rate in ModelParams is an angular frequency in
// rad/us. Configuration files give nu/2pi in MHz; mhz_to_angular() is the one
// conversion point.

#include <numbers>
#include <string>
#include <vector>

#include "chiralg2/hilbert.hpp"
#include "chiralg2/numerics.hpp"

namespace chiralg2 {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double mhz_to_angular(double nu_mhz) noexcept { return kTwoPi * nu_mhz; }
constexpr double angular_to_mhz(double omega) noexcept { return omega / kTwoPi; }

enum class Chirality { L, R };

inline const char* to_string(Chirality ch) noexcept { return ch == Chirality::L ? "L" : "R"; }

struct ModelParams {
  double delta_c = 0.0;   // omega_c - nu_p
  double delta_31 = 0.0;
  double delta_32 = 0.0;
  double g = 0.0;         // molecule-cavity coupling on |1> <-> |2>
  double xi_p = 0.0;      // cavity drive
  double omega_31 = 0.0;  // classical drive on |1> <-> |3>
  double omega_32 = 0.0;  // classical drive on |2> <-> |3>
  double phi = 0.0;       // overall loop phase before the enantiomer shift (rad)
  double kappa = 0.0;
  double gamma_21 = 0.0;
  double gamma_31 = 0.0;
  double gamma_32 = 0.0;
  double gamma_phi_21 = 0.0;
  double gamma_phi_31 = 0.0;
  double gamma_phi_32 = 0.0;
  int n_c = 8;

  /// Reference point (kappa/2pi = 1 MHz, weak drives) at delta_c = 0 with the
  /// resonance convention delta_32 = 0, delta_31 = delta_c.
  static ModelParams defaults();

  /// Copy with delta_c set and delta_31 = delta_c, delta_32 = 0.
  ModelParams at_resonant_detuning(double dc) const;

  /// Copy with all three pure-dephasing rates set to `rate`.
  ModelParams with_uniform_dephasing(double rate) const;

  bool has_dephasing() const noexcept {
    return gamma_phi_21 > 0.0 || gamma_phi_31 > 0.0 || gamma_phi_32 > 0.0;
  }

  SpaceSpec space() const { return SpaceSpec(n_c); }

  /// Throws InvalidParameterError on negative rates, kappa <= 0, non-finite
  /// values or n_c < 1.
  void validate() const;
};

/// phi for L, phi + pi for R. Returned unreduced.
double phase_of(Chirality ch, double phi) noexcept;

/// phase_of() wrapped into [0, 2pi) for display.
double reported_phase(Chirality ch, double phi) noexcept;

ComplexMatrix hamiltonian(const ModelParams& p, Chirality ch);
ComplexMatrix hamiltonian(const ModelParams& p, Chirality ch, const CompositeOperators& ops);

struct CollapseOp {
  double rate;
  ComplexMatrix op;
  std::string label;
};

/// Channels with positive rate, in the order kappa, gamma_31, gamma_32,
/// gamma_21, gamma_phi_31, gamma_phi_32, gamma_phi_21.
std::vector<CollapseOp> collapse_ops(const ModelParams& p);
std::vector<CollapseOp> collapse_ops(const ModelParams& p, const CompositeOperators& ops);

ComplexMatrix nonhermitian_hamiltonian(const ModelParams& p, Chirality ch);

}  // namespace chiralg2
