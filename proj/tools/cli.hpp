#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cypoise::cli {

/// Exit codes. Regime codes (0, 10, 20, 30) come from regime::regime_code.
inline constexpr int kExitOk = 0;
inline constexpr int kExitSelftestFailed = 1;
inline constexpr int kExitInvalidInput = 2;

/// Runs one command line (without the program name). Reports go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cypoise::cli
