#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rmlab::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kUsage = 2,
    kParameter = 3,
    kDomain = 4,
    kConditionViolated = 5,
    kNumeric = 6,
    kInsufficientTrials = 7,
    kIo = 8,
};

/// Environment variable consulted for the default --seed.
inline constexpr char kSeedEnv[] = "RMLAB_SEED";

/// Runs one CLI invocation. `args` excludes the program name. Results go
/// to `out` (or the --output file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace rmlab::cli
