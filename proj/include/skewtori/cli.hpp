#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace skewtori {

// Full command dispatch, in-process testable. args excludes the program
// name. Exit codes: 0 success, 1 usage/parse/IO, 2 inadmissible system,
// 3 verification failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace skewtori
