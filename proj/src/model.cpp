#include "chiralg2/model.hpp"

#include <cmath>

namespace chiralg2 {

ModelParams ModelParams::defaults() {
  ModelParams p;
  p.kappa = mhz_to_angular(1.0);
  p.gamma_21 = p.gamma_31 = p.gamma_32 = mhz_to_angular(0.1);
  p.g = mhz_to_angular(0.1);
  p.omega_32 = mhz_to_angular(0.1);
  p.xi_p = mhz_to_angular(0.01);
  p.omega_31 = mhz_to_angular(0.01);
  p.n_c = 8;
  return p;
}

ModelParams ModelParams::at_resonant_detuning(double dc) const {
  ModelParams q = *this;
  q.delta_c = dc;
  q.delta_31 = dc;
  q.delta_32 = 0.0;
  return q;
}

ModelParams ModelParams::with_uniform_dephasing(double rate) const {
  ModelParams q = *this;
  q.gamma_phi_21 = q.gamma_phi_31 = q.gamma_phi_32 = rate;
  return q;
}

void ModelParams::validate() const {
  const struct {
    const char* name;
    double value;
  } non_negative[] = {
      {"g", g},
      {"xi_p", xi_p},
      {"omega_31", omega_31},
      {"omega_32", omega_32},
      {"gamma_21", gamma_21},
      {"gamma_31", gamma_31},
      {"gamma_32", gamma_32},
      {"gamma_phi_21", gamma_phi_21},
      {"gamma_phi_31", gamma_phi_31},
      {"gamma_phi_32", gamma_phi_32},
  };
  for (const auto& [name, value] : non_negative) {
    if (!std::isfinite(value) || value < 0.0) {
      throw InvalidParameterError(std::string(name) + " must be finite and >= 0");
    }
  }
  for (const double v : {delta_c, delta_31, delta_32, phi}) {
    if (!std::isfinite(v)) throw InvalidParameterError("detunings and phi must be finite");
  }
  if (!std::isfinite(kappa) || kappa <= 0.0) {
    throw InvalidParameterError("kappa must be finite and > 0");
  }
  if (n_c < 1) throw InvalidParameterError("n_c must be >= 1");
}

double phase_of(Chirality ch, double phi) noexcept {
  return ch == Chirality::L ? phi : phi + std::numbers::pi;
}

double reported_phase(Chirality ch, double phi) noexcept {
  double r = std::fmod(phase_of(ch, phi), kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

ComplexMatrix hamiltonian(const ModelParams& p, Chirality ch) {
  p.validate();
  return hamiltonian(p, ch, CompositeOperators(p.space()));
}

ComplexMatrix hamiltonian(const ModelParams& p, Chirality ch, const CompositeOperators& ops) {
  if (ops.space.n_c() != p.n_c) throw DimensionError("operator cache built for another n_c");
  const cplx loop = std::polar(1.0, phase_of(ch, p.phi));

  ComplexMatrix coupling = p.g * matmul(dagger(ops.a), ops.s(1, 2));
  coupling += cplx(p.xi_p) * ops.a;
  coupling += cplx(p.omega_31) * ops.s(1, 3);
  coupling += (p.omega_32 * loop) * ops.s(2, 3);

  ComplexMatrix h = cplx(p.delta_c) * ops.number;
  h += cplx(p.delta_31 - p.delta_32) * ops.s(2, 2);
  h += cplx(p.delta_31) * ops.s(3, 3);
  h += coupling;
  h += dagger(coupling);
  return h;
}

std::vector<CollapseOp> collapse_ops(const ModelParams& p) {
  p.validate();
  return collapse_ops(p, CompositeOperators(p.space()));
}

std::vector<CollapseOp> collapse_ops(const ModelParams& p, const CompositeOperators& ops) {
  std::vector<CollapseOp> out;
  auto add = [&out](double rate, ComplexMatrix op, const char* label) {
    if (rate > 0.0) out.push_back({rate, std::move(op), label});
  };
  add(p.kappa, ops.a, "a");
  add(p.gamma_31, ops.s(1, 3), "sigma_13");
  add(p.gamma_32, ops.s(2, 3), "sigma_23");
  add(p.gamma_21, ops.s(1, 2), "sigma_12");
  add(p.gamma_phi_31, ops.s(3, 3) - ops.s(1, 1), "sigma_z31");
  add(p.gamma_phi_32, ops.s(3, 3) - ops.s(2, 2), "sigma_z32");
  add(p.gamma_phi_21, ops.s(2, 2) - ops.s(1, 1), "sigma_z21");
  return out;
}

ComplexMatrix nonhermitian_hamiltonian(const ModelParams& p, Chirality ch) {
  p.validate();
  const CompositeOperators ops(p.space());
  const cplx i{0.0, 1.0};
  ComplexMatrix h = hamiltonian(p, ch, ops);
  h -= (i * (p.kappa / 2.0)) * ops.number;
  h -= (i * (p.gamma_21 / 2.0)) * ops.s(2, 2);
  h -= (i * ((p.gamma_31 + p.gamma_32) / 2.0)) * ops.s(3, 3);
  return h;
}

}  // namespace chiralg2
