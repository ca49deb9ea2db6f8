#include "chiralg2/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "chiralg2/analytic.hpp"
#include "chiralg2/master.hpp"

namespace chiralg2 {

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

}  // namespace

std::vector<CheckResult> run_selftest() {
  std::vector<CheckResult> out;
  auto check = [&out](const char* name, const std::function<std::pair<bool, std::string>()>& f) {
    try {
      auto [ok, detail] = f();
      out.push_back({name, ok, std::move(detail)});
    } catch (const std::exception& e) {
      out.push_back({name, false, std::string("threw: ") + e.what()});
    }
  };

  const ModelParams base = ModelParams::defaults().at_resonant_detuning(0.3 * mhz_to_angular(1.0));
  const CompositeOperators ops(base.space());

  check("hamiltonian_hermitian", [&] {
    ModelParams p = base;
    p.phi = 0.7;
    double worst = 0.0;
    for (const Chirality ch : {Chirality::L, Chirality::R}) {
      const ComplexMatrix h = hamiltonian(p, ch, ops);
      worst = std::max(worst, frobenius_norm(h - dagger(h)) / frobenius_norm(h));
    }
    return std::pair{worst < 1e-13, "relative ||H - H^+|| = " + sci(worst)};
  });

  check("liouvillian_trace_preserving", [&] {
    const ComplexMatrix l = liouvillian(hamiltonian(base, Chirality::L, ops), collapse_ops(base, ops));
    const std::size_t d = ops.space.dim();
    double worst = 0.0;
    for (std::size_t c = 0; c < l.cols(); ++c) {
      cplx s{};
      for (std::size_t k = 0; k < d; ++k) s += l(k + k * d, c);
      worst = std::max(worst, std::abs(s));
    }
    return std::pair{worst < 1e-12, "max |vec(I)^+ L| = " + sci(worst)};
  });

  check("steady_state_trace_and_positivity", [&] {
    const PointSolution s = solve_point(base, Chirality::L, ops);
    const double tr_err = std::abs(trace(s.state.rho) - 1.0);
    const bool ok = tr_err < 1e-12 && s.state.min_eigenvalue > -1e-8 &&
                    s.state.residual < kSteadyStateResidualTol;
    return std::pair{ok, "|Tr rho - 1| = " + sci(tr_err) + ", min eig = " +
                             sci(s.state.min_eigenvalue) + ", residual = " + sci(s.state.residual)};
  });

  check("excitation_number_conserved", [&] {
    ModelParams p = base;
    p.xi_p = 0.0;
    p.omega_31 = 0.0;
    const ComplexMatrix h = hamiltonian(p, Chirality::L, ops);
    const double rel = frobenius_norm(commutator(total_excitation(ops.space), h)) / frobenius_norm(h);
    return std::pair{rel < 1e-12, "||[N, H]|| / ||H|| = " + sci(rel)};
  });

  check("enantiomer_is_phase_shift", [&] {
    ModelParams shifted = base;
    shifted.phi = base.phi + std::numbers::pi;
    const double a = *solve_point(shifted, Chirality::L, ops).g2;
    const double b = *solve_point(base, Chirality::R, ops).g2;
    return std::pair{a == b, "g2(L, phi+pi) = " + sci(a) + ", g2(R, phi) = " + sci(b)};
  });

  check("fock_truncation_converged", [&] {
    const ModelParams p8 = ModelParams::defaults();
    ModelParams p12 = p8;
    p12.n_c = 12;
    const double g8 = *solve_point(p8, Chirality::L).g2;
    const double g12 = *solve_point(p12, Chirality::L).g2;
    const double rel = std::abs(g8 - g12) / g12;
    return std::pair{rel < 1e-6, "|g2(8) - g2(12)| / g2(12) = " + sci(rel)};
  });

  check("weak_driving_amplitude_residual", [&] {
    double worst = 0.0;
    for (const Chirality ch : {Chirality::L, Chirality::R}) {
      const AmplitudeSolution s = amplitudes(base, ch);
      worst = std::max(worst, amplitude_equation_residual(s, base, ch) / base.xi_p);
    }
    return std::pair{worst < 1e-10, "max residual / xi_p = " + sci(worst)};
  });

  check("coherent_limit", [&] {
    ModelParams p = ModelParams::defaults();
    p.g = p.omega_31 = p.omega_32 = 0.0;
    const double g2 = *solve_point(p, Chirality::L).g2;
    return std::pair{std::abs(g2 - 1.0) < 1e-3, "numeric g2 = " + sci(g2)};
  });

  return out;
}

}  // namespace chiralg2
