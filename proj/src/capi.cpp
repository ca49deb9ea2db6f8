#include "chiralg2/chiralg2.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <new>
#include <string>
#include <thread>

#include "chiralg2/analytic.hpp"
#include "chiralg2/experiments.hpp"
#include "chiralg2/master.hpp"
#include "chiralg2/selftest.hpp"

using namespace chiralg2;

struct cg2_sweep {
  SweepResult result;
  // Grids exactly as the caller passed them, in units of kappa.
  std::vector<double> axis1;
  std::vector<double> axis2;
};

namespace {

thread_local std::string g_last_error;

cg2_status fail(cg2_status code, const char* msg) {
  g_last_error = msg;
  return code;
}

// Maps the core exception hierarchy onto status codes. Call from a catch block.
cg2_status translate() {
  try {
    throw;
  } catch (const InvalidParameterError& e) {
    return fail(CG2_ERR_INVALID_ARGUMENT, e.what());
  } catch (const DimensionError& e) {
    return fail(CG2_ERR_INVALID_ARGUMENT, e.what());
  } catch (const NonConvergenceError& e) {
    return fail(CG2_ERR_NONCONVERGENCE, e.what());
  } catch (const RankDeficientError& e) {
    return fail(CG2_ERR_NONCONVERGENCE, e.what());
  } catch (const StiffnessError& e) {
    return fail(CG2_ERR_STIFF, e.what());
  } catch (const UndefinedCorrelationError& e) {
    return fail(CG2_ERR_UNDEFINED, e.what());
  } catch (const NearSingularError& e) {
    return fail(CG2_ERR_NEAR_SINGULAR, e.what());
  } catch (const AnalyticRegimeError& e) {
    return fail(CG2_ERR_ANALYTIC_REGIME, e.what());
  } catch (const NoPeakError& e) {
    return fail(CG2_ERR_NO_PEAK, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CG2_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CG2_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CG2_ERR_INTERNAL, "unknown error");
  }
}

template <typename F>
cg2_status guarded(F&& f) {
  g_last_error.clear();
  try {
    f();
    return CG2_OK;
  } catch (...) {
    return translate();
  }
}

ModelParams to_model(const cg2_params& c) {
  ModelParams p;
  p.delta_c = mhz_to_angular(c.delta_c);
  p.delta_31 = mhz_to_angular(c.delta_31);
  p.delta_32 = mhz_to_angular(c.delta_32);
  p.g = mhz_to_angular(c.g);
  p.xi_p = mhz_to_angular(c.xi_p);
  p.omega_31 = mhz_to_angular(c.omega_31);
  p.omega_32 = mhz_to_angular(c.omega_32);
  p.kappa = mhz_to_angular(c.kappa);
  p.gamma_21 = mhz_to_angular(c.gamma_21);
  p.gamma_31 = mhz_to_angular(c.gamma_31);
  p.gamma_32 = mhz_to_angular(c.gamma_32);
  p.gamma_phi_21 = mhz_to_angular(c.gamma_phi_21);
  p.gamma_phi_31 = mhz_to_angular(c.gamma_phi_31);
  p.gamma_phi_32 = mhz_to_angular(c.gamma_phi_32);
  p.phi = c.phi;
  p.n_c = c.n_c;
  if (c.resonant) p = p.at_resonant_detuning(p.delta_c);
  p.validate();
  return p;
}

Chirality to_chirality(cg2_chirality ch) {
  if (ch != CG2_L && ch != CG2_R) throw InvalidParameterError("unknown chirality");
  return ch == CG2_L ? Chirality::L : Chirality::R;
}

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::vector<double> scaled(const double* v, std::size_t n, double kappa) {
  if (n > 0 && v == nullptr) throw InvalidParameterError("grid pointer is null");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = v[i] * kappa;
  return out;
}

void require(const void* ptr, const char* what) {
  if (ptr == nullptr) throw InvalidParameterError(std::string(what) + " is null");
}

}  // namespace

extern "C" {

const char* cg2_version(void) { return "0.1.0"; }

const char* cg2_last_error(void) { return g_last_error.c_str(); }

void cg2_params_default(cg2_params* out) {
  if (out == nullptr) return;
  const ModelParams d = ModelParams::defaults();
  *out = cg2_params{};
  out->delta_c = angular_to_mhz(d.delta_c);
  out->delta_31 = angular_to_mhz(d.delta_31);
  out->delta_32 = angular_to_mhz(d.delta_32);
  out->g = angular_to_mhz(d.g);
  out->xi_p = angular_to_mhz(d.xi_p);
  out->omega_31 = angular_to_mhz(d.omega_31);
  out->omega_32 = angular_to_mhz(d.omega_32);
  out->kappa = angular_to_mhz(d.kappa);
  out->gamma_21 = angular_to_mhz(d.gamma_21);
  out->gamma_31 = angular_to_mhz(d.gamma_31);
  out->gamma_32 = angular_to_mhz(d.gamma_32);
  out->phi = d.phi;
  out->n_c = d.n_c;
  out->resonant = 1;
}

cg2_status cg2_solve_point(const cg2_params* p, cg2_chirality ch, cg2_point* out) {
  return guarded([&] {
    require(p, "params");
    require(out, "output");
    const ModelParams q = to_model(*p);
    const Chirality c = to_chirality(ch);
    const PointSolution s = solve_point(q, c);
    cg2_point r{};
    r.has_g2 = s.g2.has_value();
    r.g2 = s.g2.value_or(0.0);
    r.p11 = s.p11;
    r.p12 = s.p12;
    r.nbar = s.photon_number;
    r.residual = s.state.residual;
    r.min_eigenvalue = s.state.min_eigenvalue;
    if (!q.has_dephasing()) {
      try {
        r.g2_analytic = g2_analytic(q, c);
        r.has_g2_analytic = 1;
      } catch (const UndefinedCorrelationError&) {
      } catch (const NearSingularError&) {
      }
    }
    *out = r;
  });
}

cg2_status cg2_sweep_detuning(const cg2_params* p, const double* dc_over_kappa, size_t n,
                              int include_analytic, int threads, cg2_sweep** out) {
  return guarded([&] {
    require(p, "params");
    require(out, "output");
    *out = nullptr;
    const ModelParams q = to_model(*p);
    const std::vector<double> grid = scaled(dc_over_kappa, n, q.kappa);
    auto s = std::make_unique<cg2_sweep>();
    s->result = sweep_detuning(q, grid, include_analytic != 0, resolve_threads(threads));
    s->axis1.assign(dc_over_kappa, dc_over_kappa + n);
    *out = s.release();
  });
}

cg2_status cg2_sweep_2d(const cg2_params* p, const double* dc_over_kappa, size_t n1,
                        cg2_axis axis, const double* axis_over_kappa, size_t n2, int threads,
                        cg2_sweep** out) {
  return guarded([&] {
    require(p, "params");
    require(out, "output");
    *out = nullptr;
    if (axis != CG2_AXIS_OMEGA_31 && axis != CG2_AXIS_GAMMA_PHI) {
      throw InvalidParameterError("unknown map axis");
    }
    const ModelParams q = to_model(*p);
    const std::vector<double> grid1 = scaled(dc_over_kappa, n1, q.kappa);
    const std::vector<double> grid2 = scaled(axis_over_kappa, n2, q.kappa);
    auto s = std::make_unique<cg2_sweep>();
    s->result = sweep_2d(q, grid1,
                         axis == CG2_AXIS_OMEGA_31 ? SecondAxis::Omega31 : SecondAxis::GammaPhi,
                         grid2, resolve_threads(threads));
    s->axis1.assign(dc_over_kappa, dc_over_kappa + n1);
    s->axis2.assign(axis_over_kappa, axis_over_kappa + n2);
    *out = s.release();
  });
}

void cg2_sweep_free(cg2_sweep* s) { delete s; }

int cg2_sweep_is_2d(const cg2_sweep* s) { return s != nullptr && s->result.is_2d(); }

size_t cg2_sweep_axis_size(const cg2_sweep* s, int axis) {
  if (s == nullptr) return 0;
  return axis == 0 ? s->axis1.size() : axis == 1 ? s->axis2.size() : 0;
}

const char* cg2_sweep_axis_name(const cg2_sweep* s, int axis) {
  if (s == nullptr) return "";
  if (axis == 0) return s->result.axis1_name.c_str();
  if (axis == 1 && s->result.axis2_name) return s->result.axis2_name->c_str();
  return "";
}

double cg2_sweep_axis_value(const cg2_sweep* s, int axis, size_t i) {
  if (s == nullptr) return 0.0;
  const std::vector<double>& v = axis == 0 ? s->axis1 : s->axis2;
  return i < v.size() ? v[i] : 0.0;
}

size_t cg2_sweep_size(const cg2_sweep* s) { return s == nullptr ? 0 : s->result.records.size(); }

size_t cg2_sweep_flagged_count(const cg2_sweep* s) {
  return s == nullptr ? 0 : s->result.flagged_count();
}

cg2_status cg2_sweep_record(const cg2_sweep* s, size_t index, cg2_record* out) {
  return guarded([&] {
    require(s, "sweep");
    require(out, "output");
    if (index >= s->result.records.size()) throw InvalidParameterError("record index out of range");
    const SweepRecord& r = s->result.records[index];
    cg2_record c{};
    const auto put = [](const std::optional<double>& v, double& value, int& has) {
      has = v.has_value();
      value = v.value_or(0.0);
    };
    put(r.g2_L_numeric, c.g2_numeric[CG2_L], c.has_g2_numeric[CG2_L]);
    put(r.g2_R_numeric, c.g2_numeric[CG2_R], c.has_g2_numeric[CG2_R]);
    put(r.g2_L_analytic, c.g2_analytic[CG2_L], c.has_g2_analytic[CG2_L]);
    put(r.g2_R_analytic, c.g2_analytic[CG2_R], c.has_g2_analytic[CG2_R]);
    c.p11[CG2_L] = r.p11_L;
    c.p12[CG2_L] = r.p12_L;
    c.p11[CG2_R] = r.p11_R;
    c.p12[CG2_R] = r.p12_R;
    c.nbar[CG2_L] = r.nbar_L;
    c.nbar[CG2_R] = r.nbar_R;
    c.residual[CG2_L] = r.residual_L;
    c.residual[CG2_R] = r.residual_R;
    c.flagged = r.flagged;
    *out = c;
  });
}

cg2_status cg2_sweep_locate_peak(const cg2_sweep* s, cg2_chirality ch, double* dc_over_kappa,
                                 double* g2) {
  return guarded([&] {
    require(s, "sweep");
    const Peak peak = locate_bunching_peak(s->result, to_chirality(ch));
    if (dc_over_kappa) *dc_over_kappa = peak.delta_c / s->result.kappa;
    if (g2) *g2 = peak.g2;
  });
}

cg2_status cg2_sweep_nearest_p11_dip(const cg2_sweep* s, cg2_chirality ch, double dc_over_kappa,
                                     double* dip_over_kappa) {
  return guarded([&] {
    require(s, "sweep");
    require(dip_over_kappa, "output");
    const double k = s->result.kappa;
    *dip_over_kappa = nearest_p11_dip(s->result, to_chirality(ch), dc_over_kappa * k) / k;
  });
}

cg2_status cg2_discriminate(const cg2_params* p, double g2_measured, double min_log10_separation,
                            cg2_verdict* out) {
  return guarded([&] {
    require(p, "params");
    require(out, "output");
    if (!(min_log10_separation >= 0.0)) {
      throw InvalidParameterError("min_log10_separation must be >= 0");
    }
    const Verdict v = discriminate(g2_measured, to_model(*p), {min_log10_separation});
    out->call = v.call == Call::L ? CG2_CALL_L : v.call == Call::R ? CG2_CALL_R : CG2_CALL_INCONCLUSIVE;
    out->margin = v.margin;
    out->g2_L = v.g2_L;
    out->g2_R = v.g2_R;
  });
}

cg2_status cg2_linspace(double first, double last, size_t count, double* out) {
  return guarded([&] {
    if (count > 0) require(out, "output");
    if (!std::isfinite(first) || !std::isfinite(last)) {
      throw InvalidParameterError("linspace bounds must be finite");
    }
    const std::vector<double> v = linspace(first, last, count);
    std::copy(v.begin(), v.end(), out);
  });
}

cg2_status cg2_selftest(cg2_check_callback cb, void* user, int* failed) {
  return guarded([&] {
    int bad = 0;
    for (const CheckResult& r : run_selftest()) {
      if (!r.passed) ++bad;
      if (cb) cb(r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str(), user);
    }
    if (failed) *failed = bad;
  });
}

}  // extern "C"
