#pragma once

#include <iosfwd>

namespace verhulst::cli {

enum ExitCode : int { kOk = 0, kStatisticalFailure = 1, kUsageError = 2 };

/// Entry point of the `verhulst` tool. Normal output goes to `out`,
/// diagnostics to `err`. Never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace verhulst::cli
