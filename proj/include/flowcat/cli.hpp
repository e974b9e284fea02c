#pragma once

#include <ostream>

namespace flowcat {

// Exit codes of run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // a check ran and failed
inline constexpr int kExitUsage = 2;   // bad arguments or unreadable input
inline constexpr int kExitCap = 3;     // a search cap was hit

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace flowcat
