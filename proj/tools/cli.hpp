#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace topk::cli {

/// Exit codes: 0 success, 1 domain error, 2 usage / input / I/O error.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;

/// Runs the command line `args` (args[0] is the program name). Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace topk::cli
