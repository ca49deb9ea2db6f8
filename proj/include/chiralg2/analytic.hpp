#pragma once

// Weak-driving closed form. The state is truncated to two excitations,
//   |psi> = C10|1,0> + C11|1,1> + C20|2,0> + C30|3,0> + C12|1,2> + C21|2,1> + C31|3,1>,
// evolved with the effective non-Hermitian Hamiltonian, and the steady-state
// amplitudes are solved with C10 = 1 after dropping higher-order feedback
// into the lower tier.

#include "chiralg2/model.hpp"
#include "chiralg2/numerics.hpp"

namespace chiralg2 {

/// Complex detunings carrying the decay rates.
struct ComplexDetunings {
  cplx cavity;  // delta_c - i kappa/2
  cplx d1;      // delta_31 - delta_32 - i gamma_21/2
  cplx d2;      // delta_31 - i (gamma_31 + gamma_32)/2
};

ComplexDetunings complex_detunings(const ModelParams& p) noexcept;

struct WV {
  cplx w;
  cplx v;
};

/// Denominators of the one- and two-excitation amplitudes. Independent of
/// chirality and phi; the argument is accepted for symmetry with amplitudes().
WV wv(const ModelParams& p, Chirality ch);

struct AmplitudeSolution {
  cplx c10{1.0, 0.0};
  cplx c11, c20, c30;
  cplx c12, c21, c31;
  double norm = 1.0;  // sqrt of the sum of |C|^2 over all seven amplitudes
  ComplexDetunings deltas{};
  /// xi_p or omega_31 exceeds 0.1 kappa; the truncation is questionable.
  bool outside_weak_driving = false;
};

/// Throws AnalyticRegimeError if any pure-dephasing rate is positive and
/// NearSingularError when |W| or |V| < 1e-14 |delta_c delta_1 delta_2|.
AmplitudeSolution amplitudes(const ModelParams& p, Chirality ch);

/// Largest absolute residual of the seven truncated steady-state amplitude
/// equations (time derivatives set to zero) evaluated at `sol`.
double amplitude_equation_residual(const AmplitudeSolution& sol, const ModelParams& p,
                                   Chirality ch);

/// 2 |C12/N|^2 / |C11/N|^4. Throws UndefinedCorrelationError if |C11/N| <= 1e-12.
double g2_analytic(const ModelParams& p, Chirality ch);

/// sum n(n-1)|C|^2 / (sum n|C|^2)^2 over the seven normalized amplitudes,
/// before the leading-order reduction. Cross-check only.
double g2_analytic_full_sum(const ModelParams& p, Chirality ch);

}  // namespace chiralg2
