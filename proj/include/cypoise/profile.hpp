#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cypoise/inverse.hpp"
#include "cypoise/params.hpp"
#include "cypoise/regime.hpp"

namespace cypoise::profile {

/// U_YY sample; empty marks an unbounded second derivative.
using SecondDerivative = std::optional<double>;

struct QuadratureSettings {
  double target_abs_err = 1e-10;
  /// Depth cap for adaptive bisection inside one panel.
  int max_refinements = 15;
  int grid_size = 101;

  void validate() const;
};

struct VelocityProfile {
  std::vector<double> grid;  ///< strictly increasing radii in [0, y_end]
  std::vector<double> u;
  std::vector<double> u_y;
  std::vector<SecondDerivative> u_yy;
  double y_end = 0.0;
  std::vector<double> singular_points;
  double max_residual = 0.0;
  /// Summed quadrature error estimate over all panels.
  double quadrature_error = 0.0;
  /// Partial profiles only: U is known up to an additive constant, anchored at U(0) = 0.
  bool undetermined_constant = false;
  regime::Regime regime = regime::Regime::ClassicalSmooth;
  int sign = 1;
};

/// U_Y(Y_i) = F^-1(b Y_i / 2) on the admissible branch, carrying the sign of b.
/// Propagates OutOfRangeError when b Y / 2 leaves the branch.
std::vector<double> shear_rate_profile(const FluidParams& p, const FlowParams& f,
                                       const inverse::InverseBranch& br,
                                       std::span<const double> grid, const EvalSettings& s);

/// Full solution on a uniform grid over [0, R] with singular radii injected.
/// U(Y) = -int_Y^R F^-1(b s / 2) ds.
/// RegimeMismatchError for NoClassicalSolution (see partial_profile).
VelocityProfile velocity_profile(const FluidParams& p, const FlowParams& f,
                                 const QuadratureSettings& q, const EvalSettings& s = {});

/// Same on a caller-supplied grid (sorted, within [0, R]). Singular radii
/// and the end points 0 and R are added when missing.
VelocityProfile velocity_profile(const FluidParams& p, const FlowParams& f,
                                 std::span<const double> grid, const QuadratureSettings& q,
                                 const EvalSettings& s = {});

/// U_YY(y) = b / (2 F'(F^-1(b y / 2))), or empty when unbounded at y.
SecondDerivative second_derivative_at(const FluidParams& p, const FlowParams& f, double y,
                                      const EvalSettings& s = {});

/// Solution of the ODE and U_Y(0) = 0 on [0, Y1] when no classical solution
/// exists on [0, R]. U(0) is pinned to 0 and undetermined_constant is set.
VelocityProfile partial_profile(const FluidParams& p, const FlowParams& f,
                                const QuadratureSettings& q, const EvalSettings& s = {});

/// max_i |F(|U_Y(Y_i)|) - |b| Y_i / 2|, the first-integral check.
double ode_residual(const FluidParams& p, const FlowParams& f, const VelocityProfile& prof);

}  // namespace cypoise::profile
