#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hcrawl::cli {

/// Runs one command line (without the program name). Returns the exit code:
/// 0 success, 1 usage error, 2 runtime failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Every subcommand path, e.g. "tree add".
std::vector<std::string> command_paths();

}  // namespace hcrawl::cli
