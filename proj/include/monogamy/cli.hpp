#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace monogamy::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kFindings = 1, kUsage = 2 };

/// Environment variables mirroring the flags use this prefix, e.g.
/// MONOGAMY_SAMPLES for --samples.
inline constexpr const char* kEnvPrefix = "MONOGAMY_";

/// Runs the command line `args` (program name first). Reports go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace monogamy::cli
