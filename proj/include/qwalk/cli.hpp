#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qwalk::cli {

inline constexpr const char* kToolVersion = "qwalk 0.1.0";

// Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qwalk::cli
