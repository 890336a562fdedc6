#ifndef VHRD_CLI_HPP
#define VHRD_CLI_HPP

#include <string>
#include <vector>

namespace vhrd {

// Exit codes, one per failure class.
enum ExitCode {
  kExitOk = 0,
  kExitUsage = 2,
  kExitConfig = 3,
  kExitNumerics = 4,
  kExitValidation = 5,
  kExitNonConvergence = 6,
  kExitIo = 7,
  kExitUnsupported = 8,
  kExitInternal = 9,
};

// Full subcommand dispatch; args excludes the program name. Failures print a
// machine-readable error record to stdout and return the matching exit code.
int run_cli(const std::vector<std::string>& args);

}  // namespace vhrd

#endif
