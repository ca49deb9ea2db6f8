// One test case per acceptance criterion; each prints a single PASS/FAIL line.
// Run without arguments to evaluate all of them in one process (sweeps are
// shared), or pass --test-case="criterion N" for one.

#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#if defined(__GLIBC__)
#include <malloc.h>
#endif

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <tuple>

#include "chiralg2/analytic.hpp"
#include "chiralg2/experiments.hpp"
#include "chiralg2/master.hpp"

using namespace chiralg2;

namespace {

constexpr double kPi = std::numbers::pi;

int threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* spec, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, spec, args...);
  return buf;
}

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
  std::fflush(stdout);
  CHECK_MESSAGE(ok, detail);
}

ModelParams base(double phi = 0.0) {
  ModelParams p = ModelParams::defaults();
  p.phi = phi;
  return p;
}

/// 201-point sweep over [-2 kappa, 2 kappa] with analytic columns, cached by
/// (omega_32 / kappa, phi, drive scale).
const SweepResult& detuning_sweep(double omega_32, double phi, double drive_scale = 1.0) {
  static std::map<std::tuple<double, double, double>, SweepResult> cache;
  const auto key = std::make_tuple(omega_32, phi, drive_scale);
  auto it = cache.find(key);
  if (it == cache.end()) {
    ModelParams p = base(phi);
    p.omega_32 = omega_32 * p.kappa;
    p.xi_p *= drive_scale;
    p.omega_31 *= drive_scale;
    it = cache.emplace(key, sweep_detuning(p, default_detuning_grid(p.kappa), true, threads())).first;
  }
  return it->second;
}

std::pair<double, double> g2_pair(const ModelParams& p) {
  return {*solve_point(p, Chirality::L).g2, *solve_point(p, Chirality::R).g2};
}

struct PeakSides {
  bool peaks_ok;   // L's bunching maximum at dc > 0, R's at dc < 0
  bool window_ok;  // some dc > 0 with g2_L > 1 > g2_R, and some dc < 0 with the reverse
  double peak_l, peak_r;  // units of kappa
};

/// Peak and sign structure at phi = pi/2 on a 0.02 kappa grid over
/// [-0.3, 0.3] kappa.
PeakSides peak_sides(const ModelParams& p) {
  const std::vector<double> window = linspace(-0.3 * p.kappa, 0.3 * p.kappa, 31);
  const SweepResult r = sweep_detuning(p, window, false, threads());
  PeakSides s{false, false, NAN, NAN};
  bool red = false, blue = false;
  for (std::size_t i = 0; i < window.size(); ++i) {
    const double l = *r.records[i].g2_L_numeric, rr = *r.records[i].g2_R_numeric;
    red = red || (window[i] > 0 && l > 1 && rr < 1);
    blue = blue || (window[i] < 0 && rr > 1 && l < 1);
  }
  s.window_ok = red && blue;
  try {
    s.peak_l = locate_bunching_peak(r, Chirality::L).delta_c / p.kappa;
    s.peak_r = locate_bunching_peak(r, Chirality::R).delta_c / p.kappa;
    s.peaks_ok = s.peak_l > 0 && s.peak_r < 0;
  } catch (const NoPeakError&) {
  }
  return s;
}

ModelParams random_sweep_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ModelParams p = ModelParams::defaults();
  const double k = p.kappa;
  p = p.at_resonant_detuning((4.0 * u(rng) - 2.0) * k);
  p.omega_32 = (0.1 + 0.9 * u(rng)) * k;
  p.omega_31 = (0.005 + 0.025 * u(rng)) * k;
  p.phi = 2.0 * kPi * u(rng);
  if (u(rng) < 0.5) p = p.with_uniform_dephasing(0.02 * u(rng) * k);
  return p;
}

}  // namespace

TEST_CASE("criterion 1") {
  Stopwatch sw;
  ModelParams p = base();
  p.g = p.omega_31 = p.omega_32 = 0.0;
  const double num = *solve_point(p, Chirality::L).g2;
  const double ana = g2_analytic(p, Chirality::L);
  const double t = sw.seconds();
  const bool ok = std::abs(num - 1.0) < 1e-3 && std::abs(ana - 1.0) < 1e-4 && t < 1.0;
  report(1, ok,
         fmt("coherent limit |g2_num-1|=%.3e (tol 1e-3) |g2_ana-1|=%.3e (tol 1e-4) in %.2fs",
             std::abs(num - 1.0), std::abs(ana - 1.0), t));
}

TEST_CASE("criterion 2") {
  Stopwatch sw;
  const ModelParams p = base(0.0);
  const auto [nl, nr] = g2_pair(p);
  const double al = g2_analytic(p, Chirality::L), ar = g2_analytic(p, Chirality::R);
  const double t = sw.seconds();
  const bool ok = nl > 1 && nr < 1 && al > 1 && ar < 1 && t < 5.0;
  report(2, ok,
         fmt("phi=0 dc=0 numeric L=%.4f R=%.4f analytic L=%.4f R=%.4f in %.2fs", nl, nr, al, ar, t));
}

TEST_CASE("criterion 3") {
  Stopwatch sw;
  const SweepResult& r = detuning_sweep(0.1, kPi / 2);
  const double t = sw.seconds();
  const Peak l = locate_bunching_peak(r, Chirality::L);
  const Peak rr = locate_bunching_peak(r, Chirality::R);
  const double k = r.kappa;
  const bool ok = l.delta_c > 0 && rr.delta_c < 0 && t < 30.0;
  report(3, ok,
         fmt("phi=pi/2 global peaks L at dc/kappa=%+.4f (g2=%.3f), R at %+.4f (g2=%.3f); "
             "201-point sweep %.1fs",
             l.delta_c / k, l.g2, rr.delta_c / k, rr.g2, t));
}

TEST_CASE("criterion 4") {
  Stopwatch sw;
  bool ok = true;
  std::string detail;
  for (const double w : {0.1, 0.5, 1.0}) {
    const SweepResult& r = detuning_sweep(w, kPi / 2);
    const double l = locate_bunching_peak(r, Chirality::L).delta_c / r.kappa;
    const double rr = locate_bunching_peak(r, Chirality::R).delta_c / r.kappa;
    ok = ok && std::abs(l - w) <= 0.2 * w && std::abs(rr + w) <= 0.2 * w;
    detail += fmt("W32=%.1f: L %+.4f R %+.4f; ", w, l, rr);
  }
  const double t = sw.seconds();
  ok = ok && t < 120.0;
  report(4, ok, detail + fmt("tol 20%%, %.1fs", t));
}

TEST_CASE("criterion 5") {
  double worst_num = 0.0, worst_ana = 0.0;
  for (const double w : {0.1, 0.5, 1.0}) {
    const SweepResult& r = detuning_sweep(w, kPi / 2);
    const std::size_t n = r.records.size();
    for (std::size_t i = 0; i < n; ++i) {
      REQUIRE(r.axis1[i] == -r.axis1[n - 1 - i]);
      const SweepRecord& a = r.records[i];
      const SweepRecord& b = r.records[n - 1 - i];
      worst_num = std::max(worst_num, std::abs(*a.g2_L_numeric - *b.g2_R_numeric) / *a.g2_L_numeric);
      worst_ana = std::max(worst_ana, std::abs(*a.g2_L_analytic - *b.g2_R_analytic) / *a.g2_L_analytic);
    }
  }
  report(5, worst_num < 1e-6 && worst_ana < 1e-12,
         fmt("max rel |g2_L(dc)-g2_R(-dc)| numeric %.3e (tol 1e-6) analytic %.3e (tol 1e-12)",
             worst_num, worst_ana));
}

TEST_CASE("criterion 6") {
  bool ok = true;
  double worst = 0.0, step = 0.0, kappa = 1.0;
  for (const double w : {0.1, 0.5, 1.0}) {
    const SweepResult& r = detuning_sweep(w, kPi / 2);
    step = r.axis1[1] - r.axis1[0];
    kappa = r.kappa;
    for (const Chirality ch : {Chirality::L, Chirality::R}) {
      const Peak pk = locate_bunching_peak(r, ch);
      const double dip = nearest_p11_dip(r, ch, pk.delta_c);
      const double gap = std::abs(dip - pk.delta_c);
      worst = std::max(worst, gap);
      ok = ok && gap <= step * (1 + 1e-12);
    }
  }
  report(6, ok, fmt("max |peak - P11 dip| = %.4f kappa, grid step %.4f kappa", worst / kappa,
                    step / kappa));
}

TEST_CASE("criterion 7") {
  bool ok = true;
  std::string detail = "phi=0 dc=0:";
  double min_l = INFINITY, max_r = 0.0;
  for (const double w : linspace(0.01, 0.03, 9)) {
    ModelParams p = base(0.0);
    p.omega_31 = w * p.kappa;
    const auto [l, r] = g2_pair(p);
    min_l = std::min(min_l, l);
    max_r = std::max(max_r, r);
    ok = ok && l > 1 && r < 1;
  }
  detail += fmt(" min g2_L=%.3f max g2_R=%.3f over W31/kappa in [0.01,0.03];", min_l, max_r);
  detail += " phi=pi/2 red/blue windows on a 0.02 kappa grid:";
  for (const double w : linspace(0.005, 0.03, 6)) {
    ModelParams p = base(kPi / 2);
    p.omega_31 = w * p.kappa;
    const PeakSides s = peak_sides(p);
    ok = ok && s.window_ok;
    detail += fmt(" %.3f[%s]", w, s.window_ok ? "ok" : "no red/blue window");
  }
  report(7, ok, detail);
}

TEST_CASE("criterion 8") {
  bool ok = true;
  std::string detail = "phi=0 dc=0:";
  for (const double gp : linspace(0.0, 0.01, 5)) {
    const ModelParams p = base(0.0).with_uniform_dephasing(gp * ModelParams::defaults().kappa);
    const auto [l, r] = g2_pair(p);
    ok = ok && l > 1 && r < 1;
    detail += fmt(" %.4f[L%.3f R%.3f]", gp, l, r);
  }
  detail += "; phi=pi/2 peak sides:";
  for (const double gp : linspace(0.0, 0.02, 5)) {
    const ModelParams p = base(kPi / 2).with_uniform_dephasing(gp * ModelParams::defaults().kappa);
    const PeakSides s = peak_sides(p);
    ok = ok && s.peaks_ok;
    detail += fmt(" %.3f[L%+.3f R%+.3f]", gp, s.peak_l, s.peak_r);
  }
  report(8, ok, detail);
}

TEST_CASE("criterion 9") {
  const double scales[3] = {1.0, 0.5, 0.25};
  const double phis[2] = {0.0, kPi / 2};
  double dev[3][2] = {};
  for (int k = 0; k < 3; ++k) {
    for (int f = 0; f < 2; ++f) {
      for (const SweepRecord& rec : detuning_sweep(0.1, phis[f], scales[k]).records) {
        for (const Chirality ch : {Chirality::L, Chirality::R}) {
          const double num = *rec.g2_numeric(ch);
          dev[k][f] = std::max(dev[k][f], std::abs(*rec.g2_analytic(ch) - num) / num);
        }
      }
    }
  }
  double worst[3];
  for (int k = 0; k < 3; ++k) worst[k] = std::max(dev[k][0], dev[k][1]);
  const bool ok = worst[0] < 0.25 && worst[1] < worst[0] && worst[2] < worst[1];
  report(9, ok,
         fmt("max rel |g2_ana-g2_num| over dc in [-2,2] kappa (phi=0 / phi=pi/2): "
             "drive x1 %.4f/%.4f (tol 0.25), x1/2 %.4f/%.4f, x1/4 %.4f/%.4f (must decrease)",
             dev[0][0], dev[0][1], dev[1][0], dev[1][1], dev[2][0], dev[2][1]));
}

TEST_CASE("criterion 10") {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    ModelParams p = ModelParams::defaults();
    const double k = p.kappa;
    p = p.at_resonant_detuning((4.0 * u(rng) - 2.0) * k);
    p.delta_32 = (0.4 * u(rng) - 0.2) * k;
    p.g = 0.3 * u(rng) * k;
    p.omega_32 = u(rng) * k;
    p.xi_p = (0.002 + 0.048 * u(rng)) * k;
    p.omega_31 = 0.05 * u(rng) * k;
    p.phi = 2.0 * kPi * u(rng);
    const Chirality ch = u(rng) < 0.5 ? Chirality::L : Chirality::R;
    worst = std::max(worst, amplitude_equation_residual(amplitudes(p, ch), p, ch) / p.xi_p);
  }
  report(10, worst < 1e-10, fmt("max residual / xi_p over 100 draws = %.3e (tol 1e-10)", worst));
}

TEST_CASE("criterion 11") {
  std::mt19937_64 rng(20260102);
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const ModelParams p = random_sweep_point(rng);
    const Chirality ch = t % 2 == 0 ? Chirality::L : Chirality::R;
    const CompositeOperators ops(p.space());
    const ComplexMatrix h = hamiltonian(p, ch, ops);
    const auto c = collapse_ops(p, ops);
    const ComplexMatrix ss = steady_state(liouvillian(h, c)).rho;
    ComplexMatrix rho0(p.space().dim(), p.space().dim());
    rho0(0, 0) = 1.0;
    const ComplexMatrix rho = propagate(h, c, rho0, 200.0 / p.kappa, 0.05 / p.kappa);
    worst = std::max(worst, trace_distance(rho, ss));
  }
  report(11, worst < 1e-6,
         fmt("max trace distance steady_state vs propagate(200/kappa) over 10 draws = %.3e "
             "(tol 1e-6)",
             worst));
}

TEST_CASE("criterion 12") {
  double herm = 0.0, unital = 0.0, trace_err = 0.0, min_eig = INFINITY, comm = 0.0;
  bool swap_exact = true;
  for (const double phi : {0.0, kPi / 2}) {
    for (const double dc : {-1.0, 0.0, 1.0}) {
      const ModelParams p = base(phi).at_resonant_detuning(dc * ModelParams::defaults().kappa);
      const CompositeOperators ops(p.space());
      const std::size_t d = p.space().dim();
      for (const Chirality ch : {Chirality::L, Chirality::R}) {
        const ComplexMatrix h = hamiltonian(p, ch, ops);
        herm = std::max(herm, frobenius_norm(h - dagger(h)) / frobenius_norm(h));
        const ComplexMatrix l = liouvillian(h, collapse_ops(p, ops));
        for (std::size_t q = 0; q < l.cols(); ++q) {
          cplx s = 0.0;
          for (std::size_t k = 0; k < d; ++k) s += l(k + k * d, q);
          unital = std::max(unital, std::abs(s) / max_abs(l));
        }
        const SteadyState ss = steady_state(l);
        trace_err = std::max(trace_err, std::abs(trace(ss.rho) - 1.0));
        min_eig = std::min(min_eig, hermitian_eigenvalues(0.5 * (ss.rho + dagger(ss.rho))).front());

        ModelParams closed = p;
        closed.xi_p = closed.omega_31 = 0.0;
        const ComplexMatrix hc = hamiltonian(closed, ch, ops);
        comm = std::max(comm, frobenius_norm(commutator(total_excitation(p.space()), hc)) /
                                  frobenius_norm(hc));
      }
      ModelParams shifted = p;
      shifted.phi = p.phi + kPi;
      swap_exact = swap_exact &&
                   hamiltonian(p, Chirality::R, ops) == hamiltonian(shifted, Chirality::L, ops);
    }
  }
  double trunc = 0.0;
  for (const Chirality ch : {Chirality::L, Chirality::R}) {
    ModelParams p8 = base(0.0), p12 = base(0.0);
    p12.n_c = 12;
    const double a = *solve_point(p8, ch).g2, b = *solve_point(p12, ch).g2;
    trunc = std::max(trunc, std::abs(a - b) / a);
  }
  const bool ok = herm < 1e-14 && unital < 1e-12 && trace_err <= 1e-12 && min_eig > -1e-8 &&
                  comm < 1e-12 && swap_exact && trunc < 1e-6;
  report(12, ok,
         fmt("hermiticity %.1e, vec(I)^T L %.1e, |Tr rho-1| %.1e, min eig %.1e, [N,H] %.1e, "
             "L<->R phase shift %s, n_c 8 vs 12 %.1e",
             herm, unital, trace_err, min_eig, comm, swap_exact ? "exact" : "inexact", trunc));
}

int main(int argc, char** argv) {
#if defined(__GLIBC__)
  // Keep the large solver workspaces on the heap instead of fresh mmaps.
  mallopt(M_MMAP_THRESHOLD, 256 << 20);
  mallopt(M_TRIM_THRESHOLD, 1 << 30);
#endif
  doctest::Context ctx(argc, argv);
  ctx.setOption("no-version", true);
  return ctx.run();
}
