#include "chiralg2/analytic.hpp"

#include <algorithm>
#include <numbers>

namespace chiralg2 {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

void require_analytic_regime(const ModelParams& p) {
  p.validate();
  if (p.has_dephasing()) {
    throw AnalyticRegimeError("weak-driving solution neglects pure dephasing; all gamma_phi must be 0");
  }
}

}  // namespace

ComplexDetunings complex_detunings(const ModelParams& p) noexcept {
  return {
      cplx(p.delta_c, -p.kappa / 2.0),
      cplx(p.delta_31 - p.delta_32, -p.gamma_21 / 2.0),
      cplx(p.delta_31, -(p.gamma_31 + p.gamma_32) / 2.0),
  };
}

WV wv(const ModelParams& p, Chirality /*ch*/) {
  const auto [dc, d1, d2] = complex_detunings(p);
  const double g2 = p.g * p.g;
  const double o32sq = p.omega_32 * p.omega_32;
  return {
      g2 * d2 - d1 * d2 * dc + dc * o32sq,
      (d2 + dc) * (dc * (d1 + dc) - g2) - dc * o32sq,
  };
}

AmplitudeSolution amplitudes(const ModelParams& p, Chirality ch) {
  require_analytic_regime(p);

  AmplitudeSolution s;
  s.deltas = complex_detunings(p);
  s.outside_weak_driving = p.xi_p > 0.1 * p.kappa || p.omega_31 > 0.1 * p.kappa;
  const auto [dc, d1, d2] = s.deltas;
  const auto [w, v] = wv(p, ch);

  const double scale = std::abs(dc * d1 * d2);
  if (!(std::abs(w) > 1e-14 * scale) || !(std::abs(v) > 1e-14 * scale)) {
    throw NearSingularError("W or V vanishes at this parameter point");
  }

  const double g = p.g, xi = p.xi_p, o31 = p.omega_31, o32 = p.omega_32;
  const cplx e = std::polar(1.0, phase_of(ch, p.phi));
  const cplx em = std::conj(e);

  s.c11 = (d1 * d2 * xi + e * g * o31 * o32 - xi * o32 * o32) / w;
  s.c20 = -(g * d2 * xi + e * dc * o31 * o32) / w;
  s.c30 = (d1 * dc * o31 + em * g * xi * o32 - g * g * o31) / w;

  const cplx feed3 = s.c30 * xi + s.c11 * o31;  // drive into |3,1>
  const cplx feed2 = s.c11 * g - s.c20 * dc;
  s.c12 = (xi * (s.c20 * g - s.c11 * (d1 + dc)) * (d2 + dc) + xi * s.c11 * o32 * o32 -
           e * g * o32 * feed3) /
          (kSqrt2 * v);
  s.c21 = (e * dc * o32 * feed3 + (d2 + dc) * feed2 * xi) / v;
  s.c31 = ((g * g - dc * (d1 + dc)) * feed3 - em * xi * o32 * feed2) / v;

  double sum = 0.0;
  for (const cplx& c : {s.c10, s.c11, s.c20, s.c30, s.c12, s.c21, s.c31}) sum += std::norm(c);
  s.norm = std::sqrt(sum);
  return s;
}

double amplitude_equation_residual(const AmplitudeSolution& s, const ModelParams& p,
                                   Chirality ch) {
  const auto [dc, d1, d2] = complex_detunings(p);
  const double g = p.g, xi = p.xi_p, o31 = p.omega_31, o32 = p.omega_32;
  const cplx e = std::polar(1.0, phase_of(ch, p.phi));
  const cplx em = std::conj(e);

  // The ground-amplitude equation is identically zero after truncation.
  const cplx residuals[] = {
      dc * s.c11 + g * s.c20 + xi * s.c10,
      d1 * s.c20 + g * s.c11 + o32 * e * s.c30,
      d2 * s.c30 + o31 * s.c10 + o32 * em * s.c20,
      2.0 * dc * s.c12 + kSqrt2 * g * s.c21 + kSqrt2 * xi * s.c11,
      (d1 + dc) * s.c21 + kSqrt2 * g * s.c12 + xi * s.c20 + o32 * e * s.c31,
      (d2 + dc) * s.c31 + xi * s.c30 + o31 * s.c11 + o32 * em * s.c21,
  };
  double worst = 0.0;
  for (const cplx& r : residuals) worst = std::max(worst, std::abs(r));
  return worst;
}

double g2_analytic(const ModelParams& p, Chirality ch) {
  const AmplitudeSolution s = amplitudes(p, ch);
  const double c11 = std::abs(s.c11) / s.norm;
  const double c12 = std::abs(s.c12) / s.norm;
  if (!(c11 > 1e-12)) {
    throw UndefinedCorrelationError("one-photon amplitude vanishes; analytic g2 undefined");
  }
  return 2.0 * c12 * c12 / (c11 * c11 * c11 * c11);
}

double g2_analytic_full_sum(const ModelParams& p, Chirality ch) {
  const AmplitudeSolution s = amplitudes(p, ch);
  const double n2 = s.norm * s.norm;
  const double two_photon = 2.0 * std::norm(s.c12) / n2;
  const double mean =
      (std::norm(s.c11) + std::norm(s.c21) + std::norm(s.c31) + 2.0 * std::norm(s.c12)) / n2;
  if (!(mean > 1e-24)) {
    throw UndefinedCorrelationError("photon number vanishes; analytic g2 undefined");
  }
  return two_photon / (mean * mean);
}

}  // namespace chiralg2
