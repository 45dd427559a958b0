#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace torsolab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNotIsomorphic = 1;
inline constexpr int kExitError = 2;

/// Runs one invocation. `args` excludes the program name. Failures print a
/// single `error: <kind>: <detail>` line on `err` and return kExitError.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace torsolab::cli
