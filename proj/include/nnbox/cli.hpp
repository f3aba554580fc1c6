#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nnbox {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitRefuted = 1,
    kExitUsage = 2,
    kExitBudget = 3,
};

/// Runs one subcommand. `args[0]` is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nnbox
