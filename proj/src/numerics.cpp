#include "chiralg2/numerics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <random>

namespace chiralg2 {

namespace {

// std::complex operator* carries C99 Annex G NaN recovery that defeats
// vectorization; the kernels below spell out the real arithmetic.
inline void axpy_row(double* out, double ar, double ai, const double* in, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double x = in[2 * j];
    const double y = in[2 * j + 1];
    out[2 * j] += ar * x - ai * y;
    out[2 * j + 1] += ar * y + ai * x;
  }
}

inline double* raw(std::span<cplx> s) { return reinterpret_cast<double*>(s.data()); }
inline const double* raw(std::span<const cplx> s) {
  return reinterpret_cast<const double*>(s.data());
}

template <typename T>
using EigenDense = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using EigenRowMajor = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename T>
using EigenVector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

// Upper bound on sigma_min(R) by inverse iteration on (R^H R)^{-1}; converges
// from above. Returns 0 if a triangular solve breaks down.
template <typename T>
double estimate_sigma_min(const EigenDense<T>& qr_packed, Eigen::Index n) {
  const auto r = qr_packed.topLeftCorner(n, n).template triangularView<Eigen::Upper>();
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  EigenVector<T> x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = T(unit(rng));
  x.normalize();
  double growth = 0.0;
  for (int it = 0; it < 12; ++it) {
    EigenVector<T> y = r.adjoint().solve(x);
    EigenVector<T> w = r.solve(y);
    growth = w.norm();
    if (!std::isfinite(growth) || growth == 0.0) return 0.0;
    x = w / growth;
  }
  return 1.0 / std::sqrt(growth);
}

template <typename T>
std::vector<T> least_squares_impl(const Matrix<T>& a, std::span<const T> b) {
  const auto m = static_cast<Eigen::Index>(a.rows());
  const auto n = static_cast<Eigen::Index>(a.cols());
  if (a.rows() < a.cols()) {
    throw DimensionError("least squares needs rows >= cols");
  }
  if (b.size() != a.rows()) {
    throw DimensionError("least squares right-hand side length mismatch");
  }
  if (n == 0) return {};

  const EigenDense<T> dense =
      Eigen::Map<const EigenRowMajor<T>>(a.data().data(), m, n);
  const Eigen::Map<const EigenVector<T>> rhs(b.data(), m);
  const double tol = 1e-10 * dense.norm();

  Eigen::HouseholderQR<EigenDense<T>> qr(dense);
  EigenVector<T> x;
  if (estimate_sigma_min<T>(qr.matrixQR(), n) > tol) {
    x = qr.solve(rhs);
  } else {
    Eigen::ColPivHouseholderQR<EigenDense<T>> pivoted(dense);
    std::size_t rank = 0;
    const auto& packed = pivoted.matrixQR();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(packed(i, i)) > tol) ++rank;
    }
    if (rank < static_cast<std::size_t>(n)) {
      throw RankDeficientError(rank, static_cast<std::size_t>(n));
    }
    x = pivoted.solve(rhs);
  }
  if (!x.allFinite()) throw NumericalError("least squares produced non-finite values");
  return std::vector<T>(x.data(), x.data() + n);
}

}  // namespace

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: inner dimensions differ (" + std::to_string(a.cols()) +
                         " vs " + std::to_string(b.rows()) + ")");
  }
  ComplexMatrix c(a.rows(), b.cols());
  const std::size_t n = b.cols();
  const double* bd = raw(b.data());
  double* cd = raw(c.data());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik.real() == 0.0 && aik.imag() == 0.0) continue;
      axpy_row(cd + 2 * i * n, aik.real(), aik.imag(), bd + 2 * k * n, n);
    }
  }
  return c;
}

std::vector<cplx> matvec(const ComplexMatrix& a, std::span<const cplx> x) {
  if (a.cols() != x.size()) throw DimensionError("matvec: length mismatch");
  std::vector<cplx> y(a.rows());
  const double* ad = raw(a.data());
  const double* xd = raw(x);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double re = 0.0, im = 0.0;
    const double* row = ad + 2 * i * a.cols();
    for (std::size_t j = 0; j < a.cols(); ++j) {
      re += row[2 * j] * xd[2 * j] - row[2 * j + 1] * xd[2 * j + 1];
      im += row[2 * j] * xd[2 * j + 1] + row[2 * j + 1] * xd[2 * j];
    }
    y[i] = {re, im};
  }
  return y;
}

std::vector<double> matvec(const RealMatrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw DimensionError("matvec: length mismatch");
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
  ComplexMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

ComplexMatrix transpose(const ComplexMatrix& a) {
  ComplexMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

ComplexMatrix conj(const ComplexMatrix& a) {
  ComplexMatrix c = a;
  for (auto& x : c.data()) x = std::conj(x);
  return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  kron_accumulate(out, 1.0, a, b);
  return out;
}

void kron_accumulate(ComplexMatrix& out, cplx alpha, const ComplexMatrix& a,
                     const ComplexMatrix& b) {
  if (out.rows() != a.rows() * b.rows() || out.cols() != a.cols() * b.cols()) {
    throw DimensionError("kron_accumulate: output shape mismatch");
  }
  const std::size_t br = b.rows(), bc = b.cols();
  double* od = raw(out.data());
  const double* bd = raw(b.data());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx s = alpha * a(i, j);
      if (s.real() == 0.0 && s.imag() == 0.0) continue;
      for (std::size_t k = 0; k < br; ++k) {
        double* dst = od + 2 * ((i * br + k) * out.cols() + j * bc);
        axpy_row(dst, s.real(), s.imag(), bd + 2 * k * bc, bc);
      }
    }
  }
}

cplx trace(const ComplexMatrix& a) {
  if (!a.is_square()) throw DimensionError("trace of a non-square matrix");
  cplx t{};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return matmul(a, b) - matmul(b, a);
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const auto& x : a.data()) s += std::norm(x);
  return std::sqrt(s);
}

double frobenius_norm(const RealMatrix& a) {
  double s = 0.0;
  for (const auto x : a.data()) s += x * x;
  return std::sqrt(s);
}

double max_abs(const ComplexMatrix& a) {
  double m = 0.0;
  for (const auto& x : a.data()) m = std::max(m, std::abs(x));
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff: shapes differ");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  }
  return m;
}

double norm2(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (const auto x : v) s += x * x;
  return std::sqrt(s);
}

bool all_finite(const ComplexMatrix& a) {
  return std::all_of(a.data().begin(), a.data().end(), [](const cplx& x) {
    return std::isfinite(x.real()) && std::isfinite(x.imag());
  });
}

std::vector<cplx> solve_least_squares(const ComplexMatrix& a, std::span<const cplx> b) {
  return least_squares_impl<cplx>(a, b);
}

std::vector<double> solve_least_squares(const RealMatrix& a, std::span<const double> b) {
  return least_squares_impl<double>(a, b);
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
  if (!a.is_square()) throw DimensionError("eigenvalues of a non-square matrix");
  const auto n = static_cast<Eigen::Index>(a.rows());
  const EigenDense<cplx> m = Eigen::Map<const EigenRowMajor<cplx>>(a.data().data(), n, n);
  const EigenDense<cplx> h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<EigenDense<cplx>> es(h, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + n);
}

}  // namespace chiralg2
