#pragma once

#include <string>
#include <vector>

namespace steer::cli {

// Batch entry point. args excludes the program name. Exit codes:
// 0 success, 2 usage error, 3 domain or infeasibility error.
int run(const std::vector<std::string>& args);

}  // namespace steer::cli
