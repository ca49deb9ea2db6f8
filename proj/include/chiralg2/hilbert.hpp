#pragma once

// Operators on the molecule (3 levels) x cavity (Fock states 0..n_c) space.
// Basis ordering puts the molecule on the slow index:
//   index(j, n) = (j - 1) * (n_c + 1) + n,   j in {1,2,3}, n in {0..n_c}.

#include <cstddef>

#include "chiralg2/numerics.hpp"

namespace chiralg2 {

inline constexpr std::size_t kMoleculeDim = 3;

struct BasisLabel {
  int level;    // 1..3
  int photons;  // 0..n_c
  bool operator==(const BasisLabel&) const = default;
};

class SpaceSpec {
public:
  explicit SpaceSpec(int n_c);

  int n_c() const noexcept { return n_c_; }
  std::size_t cavity_dim() const noexcept { return static_cast<std::size_t>(n_c_) + 1; }
  std::size_t dim() const noexcept { return kMoleculeDim * cavity_dim(); }

  std::size_t index(int level, int photons) const;
  BasisLabel label(std::size_t index) const;

  bool operator==(const SpaceSpec&) const = default;

private:
  int n_c_;
};

enum class Subsystem { Molecule, Cavity };

/// Truncated annihilation operator, (n_c+1) x (n_c+1).
ComplexMatrix annihilation(int n_c);

/// |i><j| on the molecule, i, j in {1,2,3}.
ComplexMatrix molecular_op(int i, int j);

/// Embed a single-subsystem operator: kron(op, I_cav) or kron(I_3, op).
ComplexMatrix lift(const ComplexMatrix& op, Subsystem which, const SpaceSpec& space);

/// a^dagger a + sigma_22 + sigma_33, lifted.
ComplexMatrix total_excitation(const SpaceSpec& space);

/// Lifted operators every model evaluation needs; built once per space.
struct CompositeOperators {
  explicit CompositeOperators(const SpaceSpec& space);

  SpaceSpec space;
  ComplexMatrix a;        // cavity annihilation
  ComplexMatrix number;   // a^dagger a
  ComplexMatrix sigma[4][4];  // sigma[i][j] = |i><j|, 1-based; row/col 0 unused

  const ComplexMatrix& s(int i, int j) const { return sigma[i][j]; }
};

}  // namespace chiralg2
