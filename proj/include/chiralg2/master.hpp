#pragma once

// Lindblad master equation: Liouvillian assembly, steady state, RK4
// propagation, and steady-state observables.
//
// Vectorization convention: column stacking, vec(rho)[i + j*d] = rho(i, j).
// With it, vec(A X B) = (B^T kron A) vec(X), and
//
//   L = -i (I kron H - H^T kron I)
//       + sum_k (r_k / 2) [2 conj(o_k) kron o_k - I kron o_k^+ o_k - (o_k^+ o_k)^T kron I]
//
// reproduces d rho/dt = -i[H, rho] + sum_k (r_k/2)(2 o rho o^+ - o^+ o rho - rho o^+ o).

#include <optional>
#include <span>
#include <vector>

#include "chiralg2/hilbert.hpp"
#include "chiralg2/model.hpp"
#include "chiralg2/numerics.hpp"

namespace chiralg2 {

inline constexpr double kSteadyStateResidualTol = 1e-8;
inline constexpr double kPhotonNumberFloor = 1e-12;

struct SteadyState {
  ComplexMatrix rho;
  double residual = 0.0;        // ||L vec(rho)||_2
  double min_eigenvalue = 0.0;  // of the Hermitized rho
};

std::vector<cplx> vectorize(const ComplexMatrix& rho);
ComplexMatrix unvectorize(std::span<const cplx> v, std::size_t d);

ComplexMatrix liouvillian(const ComplexMatrix& h, std::span<const CollapseOp> c_ops);

/// Solves [L ; vec(I)^T] x = [0 ; 1] in the least-squares sense.
///
/// The unknown is restricted to Hermitian matrices, written in an orthonormal
/// Hermitian basis, so the system is real and half the size of the complex
/// one. Because L maps Hermitian matrices to Hermitian matrices and the basis
/// is orthonormal, the residual norms of the two systems coincide.
///
/// Throws NonConvergenceError when the residual exceeds 1e-8 or the
/// augmented system is rank deficient (degenerate steady-state manifold).
SteadyState steady_state(const ComplexMatrix& l);

struct PropagationStats {
  int halvings = 0;
  long steps = 0;
};

/// Fixed-step classical RK4 on d rho/dt written in operator form (no
/// Liouvillian is assembled, so this path is independent of liouvillian()).
/// The step is halved whenever a step drifts the trace by more than 1e-9 or
/// grows ||rho||_F past 1 + 1e-3; after six halvings StiffnessError is thrown.
ComplexMatrix propagate(const ComplexMatrix& h, std::span<const CollapseOp> c_ops,
                        const ComplexMatrix& rho0, double t_final, double dt,
                        PropagationStats* stats = nullptr);

cplx expectation(const ComplexMatrix& op, const ComplexMatrix& rho);

/// <a^+2 a^2> / <a^+ a>^2. Throws UndefinedCorrelationError when
/// <a^+ a> < 1e-12.
double g2_numeric(const ComplexMatrix& rho, const SpaceSpec& space);

/// <j,n| rho |j,n>.
double occupation(const ComplexMatrix& rho, int level, int photons, const SpaceSpec& space);

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Everything a sweep records about one (params, chirality) point.
struct PointSolution {
  SteadyState state;
  double photon_number = 0.0;
  std::optional<double> g2;  // empty when the photon number is below the floor
  double p11 = 0.0;
  double p12 = 0.0;
};

PointSolution solve_point(const ModelParams& p, Chirality ch, const CompositeOperators& ops);
PointSolution solve_point(const ModelParams& p, Chirality ch);

}  // namespace chiralg2
