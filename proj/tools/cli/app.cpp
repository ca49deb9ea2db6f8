#include "app.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <numbers>
#include <set>

#include "CLI11.hpp"
#include "csv.hpp"

namespace cg2cli {

namespace {

const std::set<std::string> kCommands = {"g2",   "sweep", "map",  "fig2",         "fig3",
                                          "fig4", "fig5",  "discriminate", "selftest"};

struct SweepDeleter {
  void operator()(cg2_sweep* s) const { cg2_sweep_free(s); }
};
using SweepPtr = std::unique_ptr<cg2_sweep, SweepDeleter>;

/// Thrown out of a command with the exit code already decided.
struct CommandFailure {
  int code;
  std::string message;
};

void check(cg2_status st) {
  if (st == CG2_OK) return;
  const int code = st == CG2_ERR_NONCONVERGENCE || st == CG2_ERR_STIFF ? kNonConvergence : kInputError;
  throw CommandFailure{code, cg2_last_error()};
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::vector<double> grid(double first, double last, int count, const char* what) {
  if (count < 1) throw InputError(std::string(what) + " point count must be >= 1");
  std::vector<double> v(static_cast<std::size_t>(count));
  check(cg2_linspace(first, last, v.size(), v.data()));
  return v;
}

void emit(const Table& table, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    write_csv(table, out);
  } else {
    write_csv(table, path);
  }
}

int finish_sweep(const cg2_sweep* s, std::ostream& err) {
  const std::size_t flagged = cg2_sweep_flagged_count(s);
  if (flagged == 0) return kOk;
  err << "warning: " << flagged << " point(s) did not converge; see residual columns\n";
  return kNonConvergence;
}

SweepPtr run_detuning(const RunConfig& cfg, const cg2_params& p, int default_points) {
  const std::vector<double> dc =
      grid(cfg.grid.dc_min, cfg.grid.dc_max, cfg.grid.dc_points.value_or(default_points), "dc");
  cg2_sweep* raw = nullptr;
  check(cg2_sweep_detuning(&p, dc.data(), dc.size(), cfg.analytic, cfg.threads, &raw));
  return SweepPtr(raw);
}

SweepPtr run_map(const RunConfig& cfg, const cg2_params& p, const std::string& axis) {
  cg2_axis a;
  double lo = 0.0, hi = 0.0;
  if (axis == "omega_31") {
    a = CG2_AXIS_OMEGA_31;
    hi = 0.05;
  } else if (axis == "gamma_phi") {
    a = CG2_AXIS_GAMMA_PHI;
    hi = 0.04;
  } else {
    throw InputError("map axis must be omega_31 or gamma_phi, got '" + axis + "'");
  }
  const std::vector<double> dc =
      grid(cfg.grid.dc_min, cfg.grid.dc_max, cfg.grid.dc_points.value_or(41), "dc");
  const std::vector<double> second = grid(cfg.grid.axis_min.value_or(lo),
                                          cfg.grid.axis_max.value_or(hi), cfg.grid.axis_points, "axis");
  cg2_sweep* raw = nullptr;
  check(cg2_sweep_2d(&p, dc.data(), dc.size(), a, second.data(), second.size(), cfg.threads, &raw));
  return SweepPtr(raw);
}

int cmd_g2(const RunConfig& cfg, std::ostream& out) {
  for (const cg2_chirality ch : {CG2_L, CG2_R}) {
    cg2_point pt;
    check(cg2_solve_point(&cfg.params, ch, &pt));
    out << (ch == CG2_L ? "L" : "R")
        << "  g2_num=" << (pt.has_g2 ? fmt("%.6e", pt.g2) : "undefined")
        << "  g2_ana=" << (pt.has_g2_analytic ? fmt("%.6e", pt.g2_analytic) : "n/a")
        << "  nbar=" << fmt("%.6e", pt.nbar) << "  P11=" << fmt("%.6e", pt.p11)
        << "  P12=" << fmt("%.6e", pt.p12) << "  residual=" << fmt("%.2e", pt.residual) << '\n';
  }
  return kOk;
}

char panel_letter(const RunConfig& cfg, const std::string& allowed) {
  const std::string p = cfg.panel.empty() ? allowed.substr(0, 1) : cfg.panel;
  if (p.size() != 1 || allowed.find(p[0]) == std::string::npos) {
    throw InputError("panel must be one of '" + allowed + "', got '" + p + "'");
  }
  return p[0];
}

std::string default_output(const RunConfig& cfg, const std::string& fallback) {
  return cfg.output.empty() ? fallback : cfg.output;
}

int cmd_fig2(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const char panel = panel_letter(cfg, "ab");
  cg2_params p = cfg.params;
  p.phi = panel == 'a' ? 0.0 : std::numbers::pi / 2.0;
  const SweepPtr s = run_detuning(cfg, p, 201);
  emit(sweep_to_table(s.get()), default_output(cfg, std::string("fig2") + panel + ".csv"), out);
  return finish_sweep(s.get(), err);
}

int cmd_fig3(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::vector<double> values =
      cfg.omega_32_list.empty() ? std::vector<double>{0.1, 0.5, 1.0} : cfg.omega_32_list;
  const std::string stem = default_output(cfg, "fig3");
  int code = kOk;
  for (const double v : values) {
    cg2_params p = cfg.params;
    p.phi = std::numbers::pi / 2.0;
    p.omega_32 = v * p.kappa;
    const SweepPtr s = run_detuning(cfg, p, 201);
    const std::string path = stem + "_omega32_" + fmt("%g", v) + ".csv";
    write_csv(sweep_to_table(s.get()), path);
    out << "omega_32/kappa=" << fmt("%g", v) << "  csv=" << path << '\n';
    for (const cg2_chirality ch : {CG2_L, CG2_R}) {
      const char* name = ch == CG2_L ? "L" : "R";
      double dc = 0.0, g2 = 0.0, dip = 0.0;
      if (cg2_sweep_locate_peak(s.get(), ch, &dc, &g2) != CG2_OK) {
        out << "  " << name << "  no bunching peak\n";
        continue;
      }
      out << "  " << name << "  peak dc/kappa=" << fmt("%+.4f", dc) << "  g2=" << fmt("%.4e", g2);
      if (cg2_sweep_nearest_p11_dip(s.get(), ch, dc, &dip) == CG2_OK) {
        out << "  P11 dip dc/kappa=" << fmt("%+.4f", dip);
      }
      out << '\n';
    }
    code = std::max(code, finish_sweep(s.get(), err));
  }
  return code;
}

int cmd_map_preset(const RunConfig& cfg, std::ostream& out, std::ostream& err, const char* fig,
                   const std::string& axis) {
  const char panel = panel_letter(cfg, "abcd");
  cg2_params p = cfg.params;
  p.phi = panel == 'a' || panel == 'b' ? 0.0 : std::numbers::pi / 2.0;
  const SweepPtr s = run_map(cfg, p, axis);
  emit(sweep_to_table(s.get()), default_output(cfg, std::string(fig) + panel + ".csv"), out);
  return finish_sweep(s.get(), err);
}

int cmd_discriminate(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.g2_measured) throw InputError("discriminate needs a measured value (--g2)");
  cg2_verdict v;
  check(cg2_discriminate(&cfg.params, *cfg.g2_measured, cfg.min_log10_separation, &v));
  out << (v.call == CG2_CALL_L ? "L" : v.call == CG2_CALL_R ? "R" : "inconclusive") << '\n';
  out << "margin=" << fmt("%.4e", v.margin) << "  g2_L=" << fmt("%.6e", v.g2_L)
      << "  g2_R=" << fmt("%.6e", v.g2_R) << '\n';
  return v.call == CG2_CALL_INCONCLUSIVE ? kInconclusive : kOk;
}

int cmd_selftest(std::ostream& out) {
  int failed = 0;
  check(cg2_selftest(
      [](const char* name, int passed, const char* detail, void* user) {
        *static_cast<std::ostream*>(user) << (passed ? "PASS " : "FAIL ") << name << "  " << detail
                                          << '\n';
      },
      &out, &failed));
  out << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed") << '\n';
  return failed == 0 ? kOk : kInputError;
}

}  // namespace

int run_config(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (!kCommands.contains(cfg.command)) {
      throw InputError("unknown command '" + cfg.command + "'");
    }
    const std::string& c = cfg.command;
    if (c == "g2") return cmd_g2(cfg, out);
    if (c == "sweep") {
      const SweepPtr s = run_detuning(cfg, cfg.params, 201);
      emit(sweep_to_table(s.get()), cfg.output, out);
      return finish_sweep(s.get(), err);
    }
    if (c == "map") {
      const SweepPtr s = run_map(cfg, cfg.params, cfg.grid.axis);
      emit(sweep_to_table(s.get()), cfg.output, out);
      return finish_sweep(s.get(), err);
    }
    if (c == "fig2") return cmd_fig2(cfg, out, err);
    if (c == "fig3") return cmd_fig3(cfg, out, err);
    if (c == "fig4") return cmd_map_preset(cfg, out, err, "fig4", "omega_31");
    if (c == "fig5") return cmd_map_preset(cfg, out, err, "fig5", "gamma_phi");
    if (c == "discriminate") return cmd_discriminate(cfg, out);
    return cmd_selftest(out);
  } catch (const CommandFailure& f) {
    err << "error: " << f.message << '\n';
    return f.code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cavity g2(0) simulator for chiral-molecule discrimination", "chiralg2"};
  app.require_subcommand(0, 1);

  std::optional<std::string> config_path;
  std::optional<double> delta_c, delta_31, delta_32, g, xi_p, omega_31, omega_32, kappa;
  std::optional<double> gamma_21, gamma_31, gamma_32, gamma_phi;
  std::optional<std::string> phi;
  std::optional<int> n_c, threads, dc_points, axis_points;
  std::optional<std::string> output, axis, panel;
  std::optional<double> dc_min, dc_max, axis_min, axis_max, g2_measured, min_sep;
  std::vector<double> omega_32_list;
  bool no_analytic = false;

  app.add_option("--config", config_path, "JSON config file; flags override it");
  const char* mhz = " (nu/2pi, MHz)";
  app.add_option("--delta-c", delta_c, std::string("Cavity detuning") + mhz);
  app.add_option("--delta-31", delta_31, std::string("Disables resonant detuning") + mhz);
  app.add_option("--delta-32", delta_32, std::string("Disables resonant detuning") + mhz);
  app.add_option("--g", g, std::string("Cavity coupling") + mhz);
  app.add_option("--xi-p", xi_p, std::string("Cavity drive") + mhz);
  app.add_option("--omega-31", omega_31, std::string("Drive on 1-3") + mhz);
  app.add_option("--omega-32", omega_32, std::string("Drive on 2-3") + mhz);
  app.add_option("--kappa", kappa, std::string("Cavity decay") + mhz);
  app.add_option("--gamma-21", gamma_21, mhz);
  app.add_option("--gamma-31", gamma_31, mhz);
  app.add_option("--gamma-32", gamma_32, mhz);
  app.add_option("--gamma-phi", gamma_phi, std::string("All three dephasing rates") + mhz);
  app.add_option("--phi", phi, "Loop phase in radians; accepts forms like pi/2");
  app.add_option("--n-c", n_c, "Fock truncation");
  app.add_option("--threads", threads, "Sweep threads; 0 uses all cores");
  app.add_option("--out", output, "Output CSV path ('-' for stdout); stem for fig3");
  app.add_flag("--no-analytic", no_analytic, "Skip the weak-driving columns");
  app.add_option("--dc-min", dc_min, "Grid start, units of kappa");
  app.add_option("--dc-max", dc_max, "Grid end, units of kappa");
  app.add_option("--dc-points", dc_points, "Grid size");
  app.add_option("--axis", axis, "Map axis: omega_31 or gamma_phi");
  app.add_option("--axis-min", axis_min, "Units of kappa");
  app.add_option("--axis-max", axis_max, "Units of kappa");
  app.add_option("--axis-points", axis_points);

  std::vector<CLI::App*> subs;
  const auto add = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    subs.push_back(s);
    return s;
  };
  add("g2", "Single point, both chiralities");
  add("sweep", "1D detuning sweep to CSV");
  add("map", "2D map over detuning and --axis to CSV");
  add("fig2", "Detuning sweep preset")->add_option("--panel", panel, "a (phi=0) or b (phi=pi/2)");
  add("fig3", "Peak location preset over several omega_32 values")
      ->add_option("--omega-32-list", omega_32_list, "Values in units of kappa")
      ->delimiter(',');
  add("fig4", "Omega_31 map preset")->add_option("--panel", panel, "a,b (phi=0) or c,d (phi=pi/2)");
  add("fig5", "Dephasing map preset")->add_option("--panel", panel, "a,b (phi=0) or c,d (phi=pi/2)");
  CLI::App* disc = add("discriminate", "Classify a measured g2");
  disc->add_option("--g2", g2_measured, "Measured g2(0)");
  disc->add_option("--min-separation", min_sep, "Minimum log10 separation of the predictions");
  add("selftest", "Run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  RunConfig cfg;
  try {
    if (config_path) load_config_file(*config_path, cfg);
    for (CLI::App* s : subs) {
      if (s->parsed()) cfg.command = s->get_name();
    }
    if (cfg.command.empty()) {
      err << app.help();
      return kInputError;
    }
    cg2_params& p = cfg.params;
    if (delta_c) p.delta_c = *delta_c;
    if (delta_31 || delta_32) {
      p.resonant = 0;
      if (delta_31) p.delta_31 = *delta_31;
      if (delta_32) p.delta_32 = *delta_32;
    }
    if (g) p.g = *g;
    if (xi_p) p.xi_p = *xi_p;
    if (omega_31) p.omega_31 = *omega_31;
    if (omega_32) p.omega_32 = *omega_32;
    if (kappa) p.kappa = *kappa;
    if (gamma_21) p.gamma_21 = *gamma_21;
    if (gamma_31) p.gamma_31 = *gamma_31;
    if (gamma_32) p.gamma_32 = *gamma_32;
    if (gamma_phi) p.gamma_phi_21 = p.gamma_phi_31 = p.gamma_phi_32 = *gamma_phi;
    if (phi) p.phi = parse_angle(*phi);
    if (n_c) p.n_c = *n_c;
    if (threads) cfg.threads = *threads;
    if (output) cfg.output = *output;
    if (no_analytic) cfg.analytic = false;
    if (dc_min) cfg.grid.dc_min = *dc_min;
    if (dc_max) cfg.grid.dc_max = *dc_max;
    if (dc_points) cfg.grid.dc_points = *dc_points;
    if (axis) cfg.grid.axis = *axis;
    if (axis_min) cfg.grid.axis_min = *axis_min;
    if (axis_max) cfg.grid.axis_max = *axis_max;
    if (axis_points) cfg.grid.axis_points = *axis_points;
    if (panel) cfg.panel = *panel;
    if (!omega_32_list.empty()) cfg.omega_32_list = omega_32_list;
    if (g2_measured) cfg.g2_measured = *g2_measured;
    if (min_sep) cfg.min_log10_separation = *min_sep;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return run_config(cfg, out, err);
}

}  // namespace cg2cli
