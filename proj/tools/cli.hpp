#ifndef VCOOP_TOOLS_CLI_HPP
#define VCOOP_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace vcoop::cli {

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "VCOOP_OUT_DIR";

/// Entry point shared by the binary and the tests. args[0] is the program
/// name. Returns the process exit code (0 success, 1 any failure).
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vcoop::cli

#endif  // VCOOP_TOOLS_CLI_HPP
