#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ensys {

// Runs one command. args is argv without the program name.
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 budget exhausted. Output is line oriented and, for a fixed
// command and cache state, byte identical across runs and worker counts.
int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ensys
