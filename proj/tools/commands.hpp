#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace twistfact::cli {

enum Exit : int { ok = 0, property_failed = 1, input_error = 2 };

// Parses args (without the program name) and runs the command. All output goes to out,
// diagnostics to err; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twistfact::cli
