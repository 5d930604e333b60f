#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ramdata::cli {

/// Exit codes: 0 success, 1 golden divergence, 2 invalid input,
/// 3 internal invariant violation.
inline constexpr int exit_ok = 0;
inline constexpr int exit_divergence = 1;
inline constexpr int exit_invalid = 2;
inline constexpr int exit_invariant = 3;

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ramdata::cli
