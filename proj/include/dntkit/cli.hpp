#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dntkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNegative = 2;

/// Runs one command. `args` excludes the program name. Exit codes: 0 for a
/// success or affirmative verdict, 2 for a well-posed negative verdict, 1 for
/// errors.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace dntkit::cli
