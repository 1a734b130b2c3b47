#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace leotdd::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kIo = 2 };

inline constexpr const char* kConfigEnvVar = "LEOTDD_CONFIG";

/// Runs `leotdd <args...>` (args exclude the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace leotdd::cli
