#pragma once

#include <string>
#include <vector>

namespace gbo {

/// Full command-line surface, callable in-process for tests. `args` excludes
/// the program name. Returns the process exit code: 0 success, 1 domain or
/// validation error, 2 numerical failure (report still emitted), 64 unknown
/// subcommand.
int run_gbo_cli(std::vector<std::string> args);

}  // namespace gbo
