#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace cvar {

/// Runs one `cvar` command line (without the program name). Data goes to
/// `out`; diagnostics and log lines go to `err`. Returns 0 on success, 2 for
/// usage errors and 1 for any other failure.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace cvar
