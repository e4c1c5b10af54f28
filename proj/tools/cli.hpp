#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace torsion::cli {

enum ExitCode : int { exit_ok = 0, exit_usage = 2, exit_invariant = 3 };

/// Runs one invocation; args[0] is the program name. Results go to out (or to
/// --out FILE), diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace torsion::cli
