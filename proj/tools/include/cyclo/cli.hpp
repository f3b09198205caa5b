#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cyclo::cli {

/// Exit codes: 0 success, 1 "not a PP" from verify (or a sweep disagreement),
/// 2 usage, parse or domain errors.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNotPP = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cyclo::cli
