#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chiralg2 {

/// Base class for everything the library throws.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
  using Error::Error;
};

class InvalidParameterError : public Error {
public:
  using Error::Error;
};

class NumericalError : public Error {
public:
  using Error::Error;
};

/// Least-squares matrix is numerically rank deficient.
class RankDeficientError : public NumericalError {
public:
  RankDeficientError(std::size_t effective_rank, std::size_t columns)
      : NumericalError("rank deficient least-squares system: effective rank " +
                       std::to_string(effective_rank) + " of " +
                       std::to_string(columns)),
        effective_rank_(effective_rank) {}

  std::size_t effective_rank() const noexcept { return effective_rank_; }

private:
  std::size_t effective_rank_;
};

/// Steady-state residual above threshold, or a degenerate steady-state manifold.
class NonConvergenceError : public NumericalError {
public:
  NonConvergenceError(const std::string& what, double residual)
      : NumericalError(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

/// Step halving exhausted during time propagation.
class StiffnessError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// g2 requested where the photon number (or amplitude) vanishes.
class UndefinedCorrelationError : public Error {
public:
  using Error::Error;
};

/// W or V of the weak-driving solution vanish at this parameter point.
class NearSingularError : public Error {
public:
  using Error::Error;
};

/// Weak-driving solution requested outside its derivation (pure dephasing on).
class AnalyticRegimeError : public Error {
public:
  using Error::Error;
};

class NoPeakError : public Error {
public:
  using Error::Error;
};

}  // namespace chiralg2
