#pragma once

#include <iosfwd>

namespace ratdyn::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIncomplete = 3;
inline constexpr int kExitCheckFailed = 4;
inline constexpr int kExitInternal = 1;

// Entry point of the ratdyn tool; argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ratdyn::cli
