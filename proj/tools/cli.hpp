#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kolberg::cli {

// Exit codes.
enum Exit : int { ok = 0, verification_failed = 1, usage = 2, infertile = 3, domain = 4 };

// Runs one command line (without the program name). Results go to `out`,
// diagnostics to `err`; every error is mapped to an exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kolberg::cli
