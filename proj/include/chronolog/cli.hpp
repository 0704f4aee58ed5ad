#pragma once

#include <iosfwd>

namespace chronolog {

// Exit codes of the command-line tool.
inline constexpr int kExitConsistent = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitInconsistent = 3;

/// Entry point of the chronolog tool; returns the process exit code.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace chronolog
