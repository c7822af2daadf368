#ifndef PLG_TOOLS_CLI_HPP
#define PLG_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace plg::cli {

enum ExitCode : int { kOk = 0, kValidation = 2, kDomain = 3 };

/// Runs `plg <args...>` (args exclude the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plg::cli

#endif
