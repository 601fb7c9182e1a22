#ifndef SURVBOOST_CLI_HPP
#define SURVBOOST_CLI_HPP

#include <string>
#include <vector>

namespace survboost {

/// Full command-line surface. Exit codes: 0 success, 1 runtime/model error,
/// 2 input or usage error.
int run_cli(int argc, const char* const* argv);

/// Convenience wrapper for tests: args without the program name.
int run_cli(const std::vector<std::string>& args);

} // namespace survboost

#endif // SURVBOOST_CLI_HPP
