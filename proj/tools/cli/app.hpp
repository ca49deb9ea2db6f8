#pragma once

#include <iosfwd>

#include "config.hpp"

namespace cg2cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kNonConvergence = 2, kInconclusive = 3 };

/// Parses argv (flags override a --config file) and runs the command.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs an already-merged configuration.
int run_config(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace cg2cli
