#pragma once

#include "twistrank/cli/config.hpp"
#include "twistrank/cli/report.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace twistrank::cli {

/// Exit codes: 0 everything verified or certified, 1 indeterminate or
/// nonzero witness present, 2 usage or configuration error.
struct CommandResult {
    int exit_code = 0;
    Json report;
};

/// Construction plus symbolic verification. Throws ConfigError or
/// cover::ConstructionError for invalid input.
CommandResult cmd_construct(const RunConfig& cfg);

/// Construction, verification and the selected certifiers (s = 2, cubic f).
CommandResult cmd_certify(const RunConfig& cfg);

/// cmd_construct over every cell of grid_s x grid_r x grid_n with
/// 2 <= s <= r <= n, using f_r = x^r - x. Cells outside the range are
/// listed as skipped; a grid with no valid cell is a ConfigError.
CommandResult cmd_grid(const RunConfig& cfg);

/// Re-runs the symbolic checks of a saved report and replays its
/// certificates from the recorded evidence.
CommandResult cmd_report(const Json& saved);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twistrank::cli
