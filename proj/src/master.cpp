#include "chiralg2/master.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace chiralg2 {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

std::size_t superoperator_side(const ComplexMatrix& l) {
  if (!l.is_square()) throw DimensionError("Liouvillian must be square");
  const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(l.rows()))));
  if (d * d != l.rows() || d == 0) {
    throw DimensionError("Liouvillian side is not a perfect square");
  }
  return d;
}

// One member of the orthonormal Hermitian basis, addressed by its
// column-stacked slot k = i + j*d:
//   i == j : E_ii
//   i <  j : (E_ij + E_ji) / sqrt2
//   i >  j : i (E_ji - E_ij) / sqrt2      (antisymmetric partner of slot (j,i))
// Each has at most two nonzero entries in vec form.
struct BasisVec {
  std::size_t pos[2];
  cplx coef[2];
  int count;
};

BasisVec hermitian_basis(std::size_t k, std::size_t d) {
  const std::size_t i = k % d;
  const std::size_t j = k / d;
  if (i == j) return {{k, 0}, {1.0, 0.0}, 1};
  const std::size_t p = std::min(i, j), q = std::max(i, j);
  const std::size_t upper = p + q * d;  // vec slot of (p, q)
  const std::size_t lower = q + p * d;  // vec slot of (q, p)
  if (i < j) return {{upper, lower}, {kInvSqrt2, kInvSqrt2}, 2};
  return {{upper, lower}, {cplx(0.0, kInvSqrt2), cplx(0.0, -kInvSqrt2)}, 2};
}

ComplexMatrix rho_from_hermitian_coords(std::span<const double> r, std::size_t d) {
  std::vector<cplx> v(d * d);
  for (std::size_t k = 0; k < d * d; ++k) {
    const BasisVec b = hermitian_basis(k, d);
    for (int t = 0; t < b.count; ++t) v[b.pos[t]] += r[k] * b.coef[t];
  }
  return unvectorize(v, d);
}

ComplexMatrix hermitize(const ComplexMatrix& m) { return 0.5 * (m + dagger(m)); }

// Right-hand side of the master equation for Hermitian rho:
//   -i K rho + i (K rho)^+ + sum_k r_k o_k (o_k rho)^+,   K = H - (i/2) sum r o^+ o.
// (o rho)^+ = rho o^+ and (K rho)^+ = rho K^+ hold because rho is Hermitian.
struct OperatorFormRhs {
  ComplexMatrix k;
  std::vector<std::pair<double, ComplexMatrix>> jumps;

  OperatorFormRhs(const ComplexMatrix& h, std::span<const CollapseOp> c_ops) : k(h) {
    const cplx half_i{0.0, 0.5};
    for (const auto& c : c_ops) {
      k -= (half_i * c.rate) * matmul(dagger(c.op), c.op);
      jumps.emplace_back(c.rate, c.op);
    }
  }

  ComplexMatrix operator()(const ComplexMatrix& rho) const {
    const cplx i{0.0, 1.0};
    const ComplexMatrix krho = matmul(k, rho);
    ComplexMatrix out = (-i) * krho;
    out += i * dagger(krho);
    for (const auto& [rate, op] : jumps) {
      out += cplx(rate) * matmul(op, dagger(matmul(op, rho)));
    }
    return out;
  }
};

ComplexMatrix rk4_step(const OperatorFormRhs& f, const ComplexMatrix& rho, double h) {
  const cplx hc(h);
  const ComplexMatrix k1 = f(rho);
  const ComplexMatrix k2 = f(rho + (0.5 * hc) * k1);
  const ComplexMatrix k3 = f(rho + (0.5 * hc) * k2);
  const ComplexMatrix k4 = f(rho + hc * k3);
  ComplexMatrix next = rho;
  next += (hc / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  return next;
}

}  // namespace

std::vector<cplx> vectorize(const ComplexMatrix& rho) {
  std::vector<cplx> v(rho.rows() * rho.cols());
  for (std::size_t j = 0; j < rho.cols(); ++j)
    for (std::size_t i = 0; i < rho.rows(); ++i) v[i + j * rho.rows()] = rho(i, j);
  return v;
}

ComplexMatrix unvectorize(std::span<const cplx> v, std::size_t d) {
  if (v.size() != d * d) throw DimensionError("unvectorize: length is not d^2");
  ComplexMatrix m(d, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) m(i, j) = v[i + j * d];
  return m;
}

ComplexMatrix liouvillian(const ComplexMatrix& h, std::span<const CollapseOp> c_ops) {
  if (!h.is_square()) throw DimensionError("Hamiltonian must be square");
  const std::size_t d = h.rows();
  for (const auto& c : c_ops) {
    if (c.op.rows() != d || c.op.cols() != d) {
      throw DimensionError("collapse operator '" + c.label + "' does not match the Hamiltonian");
    }
  }
  const ComplexMatrix id = ComplexMatrix::identity(d);
  const cplx i{0.0, 1.0};

  ComplexMatrix l(d * d, d * d);
  kron_accumulate(l, -i, id, h);
  kron_accumulate(l, i, transpose(h), id);
  for (const auto& c : c_ops) {
    const ComplexMatrix od_o = matmul(dagger(c.op), c.op);
    const double half = c.rate / 2.0;
    kron_accumulate(l, 2.0 * half, conj(c.op), c.op);
    kron_accumulate(l, -half, id, od_o);
    kron_accumulate(l, -half, transpose(od_o), id);
  }
  return l;
}

SteadyState steady_state(const ComplexMatrix& l) {
  const std::size_t d = superoperator_side(l);
  const std::size_t n = d * d;

  // Real matrix of L in the Hermitian basis, plus the trace row:
  // A = Re(B^+ L B), where column k of B is hermitian_basis(k). Each vec slot
  // belongs to at most two basis members, so every nonzero L(p, q) feeds at
  // most four entries of A.
  struct Touch {
    std::size_t slot[2];
    cplx coef[2];
    int count = 0;
  };
  std::vector<Touch> touches(n);
  for (std::size_t k = 0; k < n; ++k) {
    const BasisVec b = hermitian_basis(k, d);
    for (int t = 0; t < b.count; ++t) {
      Touch& tp = touches[b.pos[t]];
      tp.slot[tp.count] = k;
      tp.coef[tp.count] = b.coef[t];
      ++tp.count;
    }
  }
  RealMatrix a(n + 1, n);
  for (std::size_t p = 0; p < n; ++p) {
    const Touch& tr = touches[p];
    for (std::size_t q = 0; q < n; ++q) {
      const cplx lpq = l(p, q);
      if (lpq.real() == 0.0 && lpq.imag() == 0.0) continue;
      const Touch& tc = touches[q];
      for (int u = 0; u < tr.count; ++u) {
        const cplx left = std::conj(tr.coef[u]) * lpq;
        for (int v = 0; v < tc.count; ++v) {
          a(tr.slot[u], tc.slot[v]) += (left * tc.coef[v]).real();
        }
      }
    }
  }
  for (std::size_t k = 0; k < d; ++k) a(n, k + k * d) = 1.0;

  std::vector<double> rhs(n + 1, 0.0);
  rhs[n] = 1.0;

  std::vector<double> coords;
  try {
    coords = solve_least_squares(a, rhs);
  } catch (const RankDeficientError& e) {
    throw NonConvergenceError(
        std::string("steady state is not unique (") + e.what() + ")",
        std::numeric_limits<double>::infinity());
  }

  SteadyState ss;
  ss.rho = hermitize(rho_from_hermitian_coords(coords, d));
  const cplx tr = trace(ss.rho);
  ss.rho *= 1.0 / tr.real();
  ss.residual = norm2(matvec(l, vectorize(ss.rho)));
  const auto eig = hermitian_eigenvalues(ss.rho);
  ss.min_eigenvalue = eig.front();
  if (!(ss.residual <= kSteadyStateResidualTol)) {
    throw NonConvergenceError(
        "steady-state residual " + std::to_string(ss.residual) + " exceeds 1e-8", ss.residual);
  }
  return ss;
}

ComplexMatrix propagate(const ComplexMatrix& h, std::span<const CollapseOp> c_ops,
                        const ComplexMatrix& rho0, double t_final, double dt,
                        PropagationStats* stats) {
  if (!h.is_square() || rho0.rows() != h.rows() || rho0.cols() != h.cols()) {
    throw DimensionError("propagate: rho0 and H must be square of equal size");
  }
  if (!(dt > 0.0)) throw InvalidParameterError("propagate: dt must be > 0");
  if (!(t_final >= 0.0)) throw InvalidParameterError("propagate: t_final must be >= 0");
  if (max_abs_diff(rho0, dagger(rho0)) > 1e-12) {
    throw InvalidParameterError("propagate: rho0 is not Hermitian");
  }

  constexpr double kTraceDriftTol = 1e-9;
  constexpr double kNormGrowthTol = 1e-3;
  constexpr int kMaxHalvings = 6;

  const OperatorFormRhs f(h, c_ops);
  const double tr0 = trace(rho0).real();
  const double norm_bound = std::max(1.0, frobenius_norm(rho0)) * (1.0 + kNormGrowthTol);

  PropagationStats local;
  ComplexMatrix rho = rho0;
  double t = 0.0;
  double step = dt;
  while (t < t_final) {
    const double remaining = t_final - t;
    const auto n_left = static_cast<long>(std::ceil(remaining / step - 1e-9));
    const double hstep = remaining / static_cast<double>(std::max(n_left, 1L));
    ComplexMatrix next = rk4_step(f, rho, hstep);
    const double drift = std::abs(trace(next).real() - tr0);
    if (!all_finite(next) || drift > kTraceDriftTol || frobenius_norm(next) > norm_bound) {
      if (++local.halvings > kMaxHalvings) {
        throw StiffnessError("propagation unstable after " + std::to_string(kMaxHalvings) +
                             " step halvings (last dt " + std::to_string(step) + ")");
      }
      step /= 2.0;
      continue;
    }
    rho = std::move(next);
    t = (n_left <= 1) ? t_final : t + hstep;
    ++local.steps;
  }
  if (stats) *stats = local;
  return rho;
}

cplx expectation(const ComplexMatrix& op, const ComplexMatrix& rho) {
  if (!op.is_square() || op.rows() != rho.rows() || rho.cols() != op.cols()) {
    throw DimensionError("expectation: operator and state dimensions differ");
  }
  cplx s{};
  for (std::size_t i = 0; i < op.rows(); ++i)
    for (std::size_t j = 0; j < op.cols(); ++j) s += op(i, j) * rho(j, i);
  return s;
}

double g2_numeric(const ComplexMatrix& rho, const SpaceSpec& space) {
  const ComplexMatrix a = lift(annihilation(space.n_c()), Subsystem::Cavity, space);
  const ComplexMatrix ad = dagger(a);
  const ComplexMatrix a2 = matmul(a, a);
  const double n = expectation(matmul(ad, a), rho).real();
  if (n < kPhotonNumberFloor) {
    throw UndefinedCorrelationError("photon number " + std::to_string(n) +
                                    " below 1e-12; g2 is undefined");
  }
  const double n2 = expectation(matmul(dagger(a2), a2), rho).real();
  return n2 / (n * n);
}

double occupation(const ComplexMatrix& rho, int level, int photons, const SpaceSpec& space) {
  if (rho.rows() != space.dim() || rho.cols() != space.dim()) {
    throw DimensionError("occupation: density matrix does not match the space");
  }
  const std::size_t k = space.index(level, photons);
  return rho(k, k).real();
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  double s = 0.0;
  for (const double e : hermitian_eigenvalues(a - b)) s += std::abs(e);
  return 0.5 * s;
}

PointSolution solve_point(const ModelParams& p, Chirality ch, const CompositeOperators& ops) {
  p.validate();
  const ComplexMatrix h = hamiltonian(p, ch, ops);
  const auto c_ops = collapse_ops(p, ops);
  PointSolution out;
  out.state = steady_state(liouvillian(h, c_ops));
  const SpaceSpec& space = ops.space;
  out.photon_number = expectation(ops.number, out.state.rho).real();
  if (out.photon_number >= kPhotonNumberFloor) out.g2 = g2_numeric(out.state.rho, space);
  out.p11 = occupation(out.state.rho, 1, 1, space);
  out.p12 = space.n_c() >= 2 ? occupation(out.state.rho, 1, 2, space) : 0.0;
  return out;
}

PointSolution solve_point(const ModelParams& p, Chirality ch) {
  p.validate();
  return solve_point(p, ch, CompositeOperators(p.space()));
}

}  // namespace chiralg2
