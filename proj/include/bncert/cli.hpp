#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bncert {

enum ExitCode : int { kExitOk = 0, kExitFail = 1, kExitUsage = 2, kExitFlagged = 3 };

/// Entry point of the bncert command; args excludes the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace bncert
