#ifndef CIGAN_CLI_HPP
#define CIGAN_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace cigan::cli {

/// Entry point shared by the binary and the tests. Args exclude the program
/// name. Exit codes: 0 success, 1 config/validation error, 2 data error,
/// 3 training divergence.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cigan::cli

#endif
