#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hardy_means {

/// Exit codes shared by the command-line tool and its tests.
enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 2,  ///< validation failure, bad arguments or configuration
    kExitSolver = 3,      ///< solver, consistency or inconsistency error
    kExitIo = 4,
};

/// Runs the command line `args` (args[0] is the program name) writing results
/// to `out` and diagnostics to `err`; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Seed for randomized checks: HARDY_MEANS_SEED if set and numeric, else 42.
[[nodiscard]] unsigned long long default_seed();

}  // namespace hardy_means
