#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qctl::cli {

/// Exit codes of the command-line tool.
enum exit_code : int { holds = 0, fails = 1, usage = 2, resource = 3 };

/// Runs the tool on argv-style arguments (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qctl::cli
