#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kruskal {

std::string tool_version();

// `args` excludes the program name. Exit codes: 0 success, 2 usage or
// parameter error, 1 numerical or I/O failure.
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kruskal
