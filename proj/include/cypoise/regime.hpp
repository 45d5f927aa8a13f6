#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cypoise/params.hpp"

namespace cypoise::regime {

enum class Regime {
  TrivialZeroGradient,
  Newtonian,
  ClassicalSmooth,
  ClassicalBoundarySingular,
  GeneralizedInteriorSingular,
  NoClassicalSolution,
};

std::string_view to_string(Regime r);

/// Outcome of a tolerance-aware comparison lhs <=> rhs.
enum class Comparison { Below, Equal, Above };

std::string_view to_string(Comparison c);

/// Relative comparison: Equal when |lhs - rhs| <= eq_tol * max(|lhs|, |rhs|).
Comparison compare(double lhs, double rhs, double eq_tol);

enum class SingularKind { InteriorY0, BranchEndY1 };

struct CriticalPoints {
  std::optional<double> zeta0;  ///< inflection of F (n < 0, Cu > 0)
  std::optional<double> zeta1;  ///< first positive root of F'
  std::optional<double> zeta2;  ///< second positive root of F'
  std::optional<double> f_at_zeta1;
  /// sup F when it is approached but never attained (c = 1, n = 0).
  std::optional<double> flux_supremum;
  /// Radius where the singular shear rate is reached. May exceed R.
  std::optional<double> y_singular;
  std::optional<SingularKind> singular_kind;
};

struct Discriminant {
  Comparison comparison;
  double lhs;  ///< (1 - (a+1)/n)^((n-1-a)/a)
  double rhs;  ///< (1 - c) / (a c)
};

struct RegimeReport {
  Regime regime = Regime::ClassicalSmooth;
  /// Name of the governing existence criterion.
  std::string theorem;
  CriticalPoints critical;
  std::optional<double> discriminant_lhs;
  std::optional<double> discriminant_rhs;
  std::optional<Comparison> discriminant;
  /// F(zeta1) - bR/2 when zeta1 exists.
  std::optional<double> existence_margin;
  /// Deciding quantity minus bR/2 for whichever criterion settled the regime
  /// (F(zeta0), F(zeta1) or sup F). Absent when no inequality was involved.
  std::optional<double> decision_margin;
  bool equality_detected = false;
  int sign = 1;
  std::vector<std::string> notes;
};

/// zeta0 = Cu^-1 (-(a+1)/n)^(1/a). DomainError unless n < 0 and Cu > 0.
double zeta_naught(const FluidParams& p);

/// Compares (1 - (a+1)/n)^((n-1-a)/a) against (1-c)/(a c).
/// Below: F' > 0 everywhere; Equal: F'(zeta0) = 0; Above: F' has two roots.
/// DomainError unless n < 0 and 0 < c < 1.
Discriminant discriminant(const FluidParams& p, const EvalSettings& s);

struct ZetaRoots {
  std::optional<double> zeta1;
  std::optional<double> zeta2;
  /// Set for c = 1, n = 0 where F increases to Cu^-1 without a root of F'.
  std::optional<double> flux_supremum;
};

/// Roots of F'. Closed form for c = 1, n < 0 (single root); supremum only for
/// c = 1, n = 0; bracketed search when the discriminant is Above.
/// NoRootError in every other case.
ZetaRoots find_zeta_roots(const FluidParams& p, const EvalSettings& s);

/// First root of F' by bracketing on [abs_tol, zeta0] regardless of c.
/// Requires n < 0, Cu > 0 and F'(zeta0) < 0.
double first_root_bracketed(const FluidParams& p, const EvalSettings& s);

RegimeReport classify(const FluidParams& p, const FlowParams& f, const EvalSettings& s);

/// InteriorY0: closed-form radius where U_YY blows up (degenerate inflection).
/// BranchEndY1: 2 F(zeta1) / b (or 2 / (b Cu) for c = 1, n = 0).
/// RegimeMismatchError when the corresponding critical point does not exist.
double singular_radius(const FluidParams& p, const FlowParams& f, SingularKind kind,
                       const EvalSettings& s);

/// Exit-code style integer for a regime (0, 10, 20, 30).
int regime_code(Regime r);

/// True for regimes with a solution on the whole of [0, R].
bool solvable(Regime r);

}  // namespace cypoise::regime
