#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fqc::app {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,   // unexpected error
  kExitConfig = 2,    // usage, configuration or contract error
  kExitResource = 3,  // simulation exceeds the memory cap
  kExitData = 4,      // unreadable or invalid data, numerical failure
};

/// Entry point of the `fqc` tool. argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fqc::app
