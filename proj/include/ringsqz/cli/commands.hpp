#pragma once

#include <iosfwd>
#include <string>

#include "ringsqz/cli/config.hpp"
#include "ringsqz/cli/table.hpp"

namespace ringsqz::cli {

Table cmd_threshold(const RunConfig& cfg);
Table cmd_modes(const RunConfig& cfg);
Table cmd_squeeze(const RunConfig& cfg);
Table cmd_mode_number(const RunConfig& cfg);
Table cmd_lo(const RunConfig& cfg);
/// K, p_ratio and first-mode dB at the configured point and on the doubled grid.
Table cmd_convergence(const RunConfig& cfg);

/// Dispatches on cfg.command, applying --convergence if set.
Table run_command(const RunConfig& cfg);

/// Entry point of the command-line tool. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ringsqz::cli
