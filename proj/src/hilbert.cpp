#include "chiralg2/hilbert.hpp"

#include <string>

namespace chiralg2 {

namespace {

void require_level(int level) {
  if (level < 1 || level > 3) {
    throw InvalidParameterError("molecular level must be 1, 2 or 3, got " +
                                std::to_string(level));
  }
}

}  // namespace

SpaceSpec::SpaceSpec(int n_c) : n_c_(n_c) {
  if (n_c < 1) {
    throw InvalidParameterError("Fock cutoff n_c must be >= 1, got " + std::to_string(n_c));
  }
}

std::size_t SpaceSpec::index(int level, int photons) const {
  require_level(level);
  if (photons < 0 || photons > n_c_) {
    throw InvalidParameterError("photon number " + std::to_string(photons) +
                                " outside 0.." + std::to_string(n_c_));
  }
  return static_cast<std::size_t>(level - 1) * cavity_dim() + static_cast<std::size_t>(photons);
}

BasisLabel SpaceSpec::label(std::size_t index) const {
  if (index >= dim()) throw InvalidParameterError("basis index out of range");
  return {static_cast<int>(index / cavity_dim()) + 1, static_cast<int>(index % cavity_dim())};
}

ComplexMatrix annihilation(int n_c) {
  if (n_c < 1) throw InvalidParameterError("annihilation operator needs n_c >= 1");
  const auto d = static_cast<std::size_t>(n_c) + 1;
  ComplexMatrix a(d, d);
  for (std::size_t n = 0; n + 1 < d; ++n) a(n, n + 1) = std::sqrt(static_cast<double>(n + 1));
  return a;
}

ComplexMatrix molecular_op(int i, int j) {
  require_level(i);
  require_level(j);
  ComplexMatrix m(kMoleculeDim, kMoleculeDim);
  m(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) = 1.0;
  return m;
}

ComplexMatrix lift(const ComplexMatrix& op, Subsystem which, const SpaceSpec& space) {
  const std::size_t expected =
      which == Subsystem::Molecule ? kMoleculeDim : space.cavity_dim();
  if (op.rows() != expected || op.cols() != expected) {
    throw DimensionError("lift: operator is " + std::to_string(op.rows()) + "x" +
                         std::to_string(op.cols()) + ", subsystem needs " +
                         std::to_string(expected));
  }
  if (which == Subsystem::Molecule) {
    return kron(op, ComplexMatrix::identity(space.cavity_dim()));
  }
  return kron(ComplexMatrix::identity(kMoleculeDim), op);
}

ComplexMatrix total_excitation(const SpaceSpec& space) {
  const ComplexMatrix a = annihilation(space.n_c());
  ComplexMatrix n = lift(matmul(dagger(a), a), Subsystem::Cavity, space);
  n += lift(molecular_op(2, 2), Subsystem::Molecule, space);
  n += lift(molecular_op(3, 3), Subsystem::Molecule, space);
  return n;
}

CompositeOperators::CompositeOperators(const SpaceSpec& sp) : space(sp) {
  const ComplexMatrix a_cav = annihilation(space.n_c());
  a = lift(a_cav, Subsystem::Cavity, space);
  number = lift(matmul(dagger(a_cav), a_cav), Subsystem::Cavity, space);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      sigma[i][j] = lift(molecular_op(i, j), Subsystem::Molecule, space);
}

}  // namespace chiralg2
