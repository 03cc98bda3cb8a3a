#ifndef PDSP_TOOLS_COMMANDS_HPP
#define PDSP_TOOLS_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace pdsp::cli {

inline constexpr int kExitOptimal = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitTimeLimit = 2;

/// Runs `pdsp <args...>` (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pdsp::cli

#endif  // PDSP_TOOLS_COMMANDS_HPP
