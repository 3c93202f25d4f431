#pragma once

#include <string>
#include <vector>

namespace minktens::cli {

// Runs the command-line tool. Returns 0 on success, 2 on configuration
// errors, 3 when selfcheck finds a numerical contract violation.
int run(const std::vector<std::string>& args);

}  // namespace minktens::cli
