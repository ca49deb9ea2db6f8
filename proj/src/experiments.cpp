#include "chiralg2/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "chiralg2/analytic.hpp"
#include "chiralg2/master.hpp"

namespace chiralg2 {

namespace {

void require_grid(std::span<const double> grid, const char* what) {
  if (grid.empty()) throw InvalidParameterError(std::string(what) + " grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) {
      throw InvalidParameterError(std::string(what) + " grid has a non-finite value");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw InvalidParameterError(std::string(what) + " grid must be strictly increasing");
    }
  }
}

struct Enantiomer {
  std::optional<double> g2;
  double p11 = 0.0, p12 = 0.0, nbar = 0.0, residual = 0.0;
  bool flagged = false;
};

Enantiomer solve_enantiomer(const ModelParams& q, Chirality ch, const CompositeOperators& ops) {
  Enantiomer e;
  try {
    const PointSolution s = solve_point(q, ch, ops);
    e.g2 = s.g2;
    e.p11 = s.p11;
    e.p12 = s.p12;
    e.nbar = s.photon_number;
    e.residual = s.state.residual;
  } catch (const NonConvergenceError& err) {
    e.flagged = true;
    e.residual = err.residual();
  } catch (const NumericalError&) {
    e.flagged = true;
    e.residual = std::numeric_limits<double>::infinity();
  }
  return e;
}

std::optional<double> analytic_or_missing(const ModelParams& q, Chirality ch) {
  try {
    return g2_analytic(q, ch);
  } catch (const UndefinedCorrelationError&) {
  } catch (const NearSingularError&) {
  }
  return std::nullopt;
}

SweepRecord solve_record(const ModelParams& q, bool include_analytic,
                         const CompositeOperators& ops) {
  const Enantiomer l = solve_enantiomer(q, Chirality::L, ops);
  const Enantiomer r = solve_enantiomer(q, Chirality::R, ops);
  SweepRecord rec;
  rec.g2_L_numeric = l.g2;
  rec.g2_R_numeric = r.g2;
  rec.p11_L = l.p11;
  rec.p12_L = l.p12;
  rec.p11_R = r.p11;
  rec.p12_R = r.p12;
  rec.nbar_L = l.nbar;
  rec.nbar_R = r.nbar;
  rec.residual_L = l.residual;
  rec.residual_R = r.residual;
  rec.flagged = l.flagged || r.flagged;
  if (include_analytic && !q.has_dephasing()) {
    rec.g2_L_analytic = analytic_or_missing(q, Chirality::L);
    rec.g2_R_analytic = analytic_or_missing(q, Chirality::R);
  }
  return rec;
}

// Evaluates task(i) for i in [0, n) and stores results by index, so the
// output order never depends on scheduling.
template <typename Task>
std::vector<SweepRecord> run_indexed(std::size_t n, int threads, const Task& task) {
  std::vector<SweepRecord> out(n);
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) out[i] = task(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, n); ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < n; i = next++) out[i] = task(i);
        } catch (...) {
          errors[w] = std::current_exception();
          next = n;
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace

std::size_t SweepResult::flagged_count() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const SweepRecord& r) { return r.flagged; }));
}

const char* axis_name(SecondAxis axis) noexcept {
  return axis == SecondAxis::Omega31 ? "omega_31" : "gamma_phi";
}

SweepResult sweep_detuning(const ModelParams& p, std::span<const double> dc_grid,
                           bool include_analytic, int threads) {
  p.validate();
  require_grid(dc_grid, "detuning");
  const CompositeOperators ops(p.space());

  SweepResult result;
  result.axis1.assign(dc_grid.begin(), dc_grid.end());
  result.kappa = p.kappa;
  result.records = run_indexed(dc_grid.size(), threads, [&](std::size_t i) {
    return solve_record(p.at_resonant_detuning(dc_grid[i]), include_analytic, ops);
  });
  return result;
}

SweepResult sweep_2d(const ModelParams& p, std::span<const double> dc_grid, SecondAxis axis,
                     std::span<const double> axis_grid, int threads) {
  p.validate();
  require_grid(dc_grid, "detuning");
  require_grid(axis_grid, axis_name(axis));
  if (axis_grid.front() < 0.0) {
    throw InvalidParameterError(std::string(axis_name(axis)) + " grid must be non-negative");
  }
  const CompositeOperators ops(p.space());

  SweepResult result;
  result.axis1.assign(dc_grid.begin(), dc_grid.end());
  result.axis2_name = axis_name(axis);
  result.axis2.assign(axis_grid.begin(), axis_grid.end());
  result.kappa = p.kappa;
  const std::size_t n1 = dc_grid.size();
  result.records = run_indexed(n1 * axis_grid.size(), threads, [&](std::size_t k) {
    const double second = axis_grid[k / n1];
    ModelParams q = p.at_resonant_detuning(dc_grid[k % n1]);
    if (axis == SecondAxis::Omega31) {
      q.omega_31 = second;
    } else {
      q = q.with_uniform_dephasing(second);
    }
    return solve_record(q, false, ops);
  });
  return result;
}

std::pair<double, double> parabolic_vertex(double x0, double y0, double x1, double y1, double x2,
                                           double y2) {
  const double a = (x1 - x0) * (y1 - y2);
  const double b = (x1 - x2) * (y1 - y0);
  const double den = a - b;
  if (den == 0.0) return {x1, y1};
  const double x = x1 - 0.5 * ((x1 - x0) * a - (x1 - x2) * b) / den;
  // Lagrange form evaluated at the vertex.
  const double l0 = (x - x1) * (x - x2) / ((x0 - x1) * (x0 - x2));
  const double l1 = (x - x0) * (x - x2) / ((x1 - x0) * (x1 - x2));
  const double l2 = (x - x0) * (x - x1) / ((x2 - x0) * (x2 - x1));
  return {x, y0 * l0 + y1 * l1 + y2 * l2};
}

Peak locate_bunching_peak(const SweepResult& result, Chirality ch) {
  if (result.is_2d()) throw InvalidParameterError("peak location needs a 1D detuning sweep");
  const std::size_t n = result.axis1.size();
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = result.at(i).g2_numeric(ch);
    if (v && (!best || *v > *result.at(*best).g2_numeric(ch))) best = i;
  }
  if (!best || !(*result.at(*best).g2_numeric(ch) > 1.0)) {
    throw NoPeakError(std::string("no bunching (g2 > 1) for chirality ") + to_string(ch));
  }
  const std::size_t i = *best;
  Peak peak{result.axis1[i], *result.at(i).g2_numeric(ch), i};
  if (i > 0 && i + 1 < n) {
    const auto& lo = result.at(i - 1).g2_numeric(ch);
    const auto& hi = result.at(i + 1).g2_numeric(ch);
    if (lo && hi) {
      const auto [x, y] = parabolic_vertex(result.axis1[i - 1], *lo, result.axis1[i], peak.g2,
                                           result.axis1[i + 1], *hi);
      peak.delta_c = x;
      peak.g2 = y;
    }
  }
  return peak;
}

double nearest_p11_dip(const SweepResult& result, Chirality ch, double delta_c) {
  if (result.is_2d()) throw InvalidParameterError("dip location needs a 1D detuning sweep");
  std::optional<double> best;
  for (std::size_t i = 1; i + 1 < result.axis1.size(); ++i) {
    const double y = result.at(i).p11(ch);
    if (y < result.at(i - 1).p11(ch) && y < result.at(i + 1).p11(ch)) {
      const double x = result.axis1[i];
      if (!best || std::abs(x - delta_c) < std::abs(*best - delta_c)) best = x;
    }
  }
  if (!best) throw NoPeakError("P_|1,1> has no interior local minimum");
  return *best;
}

Verdict discriminate(double g2_measured, const ModelParams& p, const DiscriminationPolicy& policy) {
  if (!std::isfinite(g2_measured) || g2_measured < 0.0) {
    throw InvalidParameterError("measured g2 must be finite and >= 0");
  }
  p.validate();
  const CompositeOperators ops(p.space());
  Verdict v;
  for (const Chirality ch : {Chirality::L, Chirality::R}) {
    const PointSolution s = solve_point(p, ch, ops);
    if (!s.g2) throw UndefinedCorrelationError("model g2 undefined at this parameter point");
    (ch == Chirality::L ? v.g2_L : v.g2_R) = *s.g2;
  }
  const double log_l = std::log10(v.g2_L);
  const double log_r = std::log10(v.g2_R);
  const double log_m = std::log10(g2_measured);
  const double separation = std::abs(log_l - log_r);
  const double dist_l = std::abs(log_m - log_l);
  const double dist_r = std::abs(log_m - log_r);
  const double nearest = std::min(dist_l, dist_r);
  v.margin = separation - nearest;
  if (separation < policy.min_log10_separation || !(nearest <= 0.5 * separation)) {
    v.call = Call::Inconclusive;
  } else {
    v.call = dist_l <= dist_r ? Call::L : Call::R;
  }
  return v;
}

std::vector<double> linspace(double first, double last, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {first};
  // Centered form keeps grids with first == -last exactly antisymmetric.
  const double mid = 0.5 * (first + last);
  const double half = 0.5 * (last - first);
  const auto span = static_cast<double>(count - 1);
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double k = 2.0 * static_cast<double>(i) - span;
    out[i] = mid + half * k / span;
  }
  out.front() = first;
  out.back() = last;
  return out;
}

std::vector<double> default_detuning_grid(double kappa) {
  return linspace(-2.0 * kappa, 2.0 * kappa, 201);
}

}  // namespace chiralg2
