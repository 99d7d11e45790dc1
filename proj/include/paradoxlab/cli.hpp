#pragma once

// The paradoxlab command line: analyze, solve, construct and verify.
// Exit codes: 0 success, 1 usage or input error, 2 a claim check failed.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace paradoxlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerification = 2;

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// analyze target -> identifier of the claim it reproduces.
const std::map<std::string, std::string>& analyze_claims();

}  // namespace paradoxlab
