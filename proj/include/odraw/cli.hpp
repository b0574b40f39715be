#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace odraw {

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitParse = 3, kExitModule = 4, kExitMismatch = 5 };

// Entry point of the odraw tool. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace odraw
