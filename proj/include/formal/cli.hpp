#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace formal::cli {

// Exit statuses shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kRejected = 1;
inline constexpr int kFailure = 2;

/// Runs one command line (without the program name). Standard streams are
/// injected so the REPL and every subcommand can be driven from tests.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace formal::cli
