#pragma once

#include <istream>
#include <string>

#include "run_config.hpp"
#include "triadic/error.hpp"

namespace triadic::cli {

enum ExitCode : int {
    kExitSuccess = 0,
    kExitParse = 1,        ///< I/O, parse or configuration error
    kExitPrecondition = 2, ///< precondition violation
    kExitInternal = 3,     ///< internal invariant breach (including equivalence mismatches)
};

int exit_code_for(ErrorKind kind) noexcept;

struct CommandResult {
    int exit_code = kExitSuccess;
    std::string output; ///< report text for stdout
    std::string error;  ///< diagnostic for stderr
};

CommandResult cmd_test(const RunConfig& config, std::istream& input);
CommandResult cmd_simulate(const RunConfig& config);
CommandResult cmd_closure_check(const RunConfig& config);
CommandResult cmd_counterexample(const RunConfig& config);
CommandResult cmd_graph(const RunConfig& config, std::istream& input);

/// Validates the config, opens the input (a path, or `-` for stdin), dispatches,
/// and turns library errors into exit codes. Never throws for library errors.
CommandResult run_command(const RunConfig& config);

} // namespace triadic::cli
