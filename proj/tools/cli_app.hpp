#ifndef MERIDIAN_CLI_APP_HPP
#define MERIDIAN_CLI_APP_HPP

#include <string>
#include <vector>

namespace meridian::cli {

/// Dispatches the meridian subcommands.  Exit codes: 0 success,
/// 1 usage/validation error, 2 runtime numerical error.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace meridian::cli

#endif  // MERIDIAN_CLI_APP_HPP
