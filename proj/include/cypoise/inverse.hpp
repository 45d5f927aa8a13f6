#pragma once

#include <limits>

#include "cypoise/params.hpp"

namespace cypoise::inverse {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// The monotone piece [0, upper_zeta] of F that starts at F(0) = 0. Only this
/// branch yields U_Y(0) = 0; later increasing pieces (beyond zeta2) are never
/// used.
struct InverseBranch {
  double upper_zeta = kUnbounded;
  double upper_flux = kUnbounded;
  /// upper_flux is a supremum approached as zeta -> inf, never attained.
  bool flux_is_supremum = false;

  bool bounded_zeta() const { return upper_zeta != kUnbounded; }
  bool bounded_flux() const { return upper_flux != kUnbounded; }
};

InverseBranch admissible_branch(const FluidParams& p, const EvalSettings& s);

/// zeta on the branch with F(zeta) = x.
///
/// x within eq_tol (relative) above a finite, attained upper_flux is clamped
/// to upper_zeta; anything further out throws OutOfRangeError. Near the branch
/// end F' -> 0 and the search falls back to plain bisection.
double invert_flux(const FluidParams& p, const InverseBranch& br, double x, const EvalSettings& s);

/// True when invert_flux(x) would be clamped to the branch end.
bool at_branch_end(const InverseBranch& br, double x, const EvalSettings& s);

}  // namespace cypoise::inverse
