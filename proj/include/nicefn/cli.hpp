#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nicefn::cli {

// Exit statuses of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

// Runs one command. `args` excludes the program name. Results go to `out`
// (or the --output file); diagnostics go to `err` as
//   error: code=<name>: <message>
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace nicefn::cli
