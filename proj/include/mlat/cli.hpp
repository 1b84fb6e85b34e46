#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace mlat::cli {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kReportSchema = "mlat-report/1";

/// Exit codes: 0 all checks passed or were vacuous; 1 a violation, refutation
/// or exhibit was reported; 2 input error.
enum ExitCode : int { kOk = 0, kFound = 1, kInputError = 2 };

/// Runs one subcommand. `args` excludes the program name. `color` enables
/// ANSI status tags in text mode.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err,
        bool color = false);

}  // namespace mlat::cli
