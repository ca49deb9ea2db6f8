#pragma once

// Dense row-major matrices and the handful of linear-algebra kernels the
// simulator needs. No physics lives here.

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "chiralg2/errors.hpp"

namespace chiralg2 {

using cplx = std::complex<double>;

template <typename T>
class Matrix {
public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T{}) {}

  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw DimensionError("matrix data length does not equal rows*cols");
    }
  }

  /// Row-by-row literal, e.g. Matrix<cplx>{{0, 1}, {0, 0}}.
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw DimensionError("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

  bool operator==(const Matrix&) const = default;

private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw DimensionError("matrix shapes differ in elementwise operation");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ComplexMatrix = Matrix<cplx>;
using RealMatrix = Matrix<double>;

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<cplx> matvec(const ComplexMatrix& a, std::span<const cplx> x);
std::vector<double> matvec(const RealMatrix& a, std::span<const double> x);

/// Conjugate transpose.
ComplexMatrix dagger(const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);
ComplexMatrix conj(const ComplexMatrix& a);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// out += alpha * kron(a, b) without materializing the product. Zero entries
/// of `a` are skipped, so sparse left factors are cheap.
void kron_accumulate(ComplexMatrix& out, cplx alpha, const ComplexMatrix& a,
                     const ComplexMatrix& b);

cplx trace(const ComplexMatrix& a);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

double frobenius_norm(const ComplexMatrix& a);
double frobenius_norm(const RealMatrix& a);
double max_abs(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double norm2(std::span<const cplx> v);
double norm2(std::span<const double> v);

bool all_finite(const ComplexMatrix& a);

/// Minimizer of ||A x - b||_2 for A with rows >= cols.
///
/// Uses a blocked Householder QR. The smallest singular value of R (equal to
/// that of A) is estimated by inverse iteration; when it falls below
/// 1e-10 * ||A||_F the system is refactored with column pivoting and
/// RankDeficientError reports the effective rank.
std::vector<cplx> solve_least_squares(const ComplexMatrix& a, std::span<const cplx> b);
std::vector<double> solve_least_squares(const RealMatrix& a, std::span<const double> b);

/// Ascending eigenvalues of the Hermitian part (A + A^dagger)/2.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a);

}  // namespace chiralg2
