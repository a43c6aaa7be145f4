#ifndef MVRR_TOOLS_CLI_HPP
#define MVRR_TOOLS_CLI_HPP

#include <iosfwd>

namespace mvrr::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,      // expectation, property, or order-law failure
  kUsage = 2,        // bad flags or invalid configuration
  kFileNotFound = 3, // scenario file missing or unreadable
  kParseError = 4,   // scenario or order text malformed
};

/// Entry point behind the `mvrr` binary; all output goes to `out`/`err`.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace mvrr::cli

#endif // MVRR_TOOLS_CLI_HPP
