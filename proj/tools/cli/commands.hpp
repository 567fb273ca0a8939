#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ljfrft::cli {

/// Runs one subcommand. `args` excludes the program name. Returns 0 on
/// success, 1 on usage or configuration errors and 2 on numerical failures.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ljfrft::cli
