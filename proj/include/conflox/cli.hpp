#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace conflox {

// Exit codes: 0 success, 1 verification failure, 2 configuration error, 3 integration abort.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitAbort = 3;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conflox
