#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace oodn::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsageOrIo = 1;
inline constexpr int kDoesNotExist = 2;
inline constexpr int kInvalid = 3;

/// Runs one subcommand. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oodn::cli
