#pragma once

#include <string>
#include <vector>

#include "cypoise/params.hpp"

namespace cypoise::cli {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  ///< observed vs expected, or the exception text
};

/// Golden examples and invariant spot checks. The acceptance thresholds are
/// fixed; the solver tolerances come from `s`, so loosening them far enough
/// makes the named checks fail.
std::vector<CheckResult> run_selftest(const EvalSettings& s);

}  // namespace cypoise::cli
