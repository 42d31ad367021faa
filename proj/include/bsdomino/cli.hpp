#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bsdomino::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kOk = 0,               // success / tiling found
    kFailed = 1,           // verification failure / no tiling exists
    kBudgetExceeded = 2,   // search budget or enumeration cap hit
    kInputError = 3,       // unparsable or invalid input, bad flags
};

/// Runs the command line `args` (args[0] is the program name) writing the
/// machine-readable result to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bsdomino::cli
