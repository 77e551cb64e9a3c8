#pragma once

#include <string>
#include <vector>

namespace yinset {

// Entry point of the command-line tool. Exit codes: 0 ok, 1 check failed,
// 2 usage error, 3 geometry/runtime error.
int runCli(const std::vector<std::string>& args);

}  // namespace yinset
