#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gct::cli {

enum ExitCode : int {
    kPass = 0,
    kCheckFailed = 1,
    kInputError = 2,
    kCertificationFailed = 3,
};

/// Environment variable selecting the default tolerance profile for chart checks:
/// "default", "strict" (tolerances / 100) or "loose" (tolerances * 100).
inline constexpr const char* kToleranceProfileEnv = "GCTORIC_TOLERANCE_PROFILE";

/// Runs one command line (without the program name). The JSON report goes to
/// --output when given, otherwise to `out`; the one-line human summary goes to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gct::cli
