#pragma once

#include <iosfwd>

namespace hypercoverage::cli {

enum ExitCode : int {
    kOk = 0,
    kIoError = 1,
    kUsageError = 2,
    kCensored = 3,
};

/// Entry point of the `hypercoverage` tool. Human-readable summaries go to
/// out, diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hypercoverage::cli
