#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ltg::cli {

/// Exit codes of `check` and `oracle`; other subcommands use 0 and kError.
inline constexpr int kEquivalent = 0;
inline constexpr int kInequivalent = 1;
inline constexpr int kError = 2;

/// Runs one command line (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ltg::cli
