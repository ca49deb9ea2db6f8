#pragma once

#include <random>

#include "chiralg2/numerics.hpp"

namespace testsupport {

inline chiralg2::ComplexMatrix random_matrix(std::size_t rows, std::size_t cols,
                                             std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  chiralg2::ComplexMatrix m(rows, cols);
  for (auto& x : m.data()) x = {n(rng), n(rng)};
  return m;
}

inline chiralg2::RealMatrix random_real(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  chiralg2::RealMatrix m(rows, cols);
  for (auto& x : m.data()) x = n(rng);
  return m;
}

}  // namespace testsupport
