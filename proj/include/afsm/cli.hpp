#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace afsm {

/// Runs one command. `args` excludes the program name.
/// Returns 0 (yes / success), 1 (no) or 2 (error).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace afsm
