#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cnr {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitPropertyFailure = 1,
  kExitUsage = 2,
  kExitAdmission = 3,
};

// Entry point of the `cnr` tool; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cnr
