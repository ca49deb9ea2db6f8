#pragma once

#include <string>
#include <vector>

namespace chiralg2 {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

/// Structural invariants at the default parameters: Hermiticity, trace
/// preservation, steady-state trace and positivity, excitation-number
/// conservation, enantiomer reparameterization, Fock truncation, and the
/// weak-driving amplitude residual. Takes about a second.
std::vector<CheckResult> run_selftest();

}  // namespace chiralg2
