#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cypoise/params.hpp"

/// Computable a-priori quantities for the unsteady pipe problem
///
///   8 beta^2 W_T - (1/Y) d/dY { mu_app(|W_Y|) Y W_Y } = f(T),
///
/// with W_Y(T, 0) = W(T, R) = 0 and W(0, Y) = Psi(Y). Nothing here integrates
/// in time; the routines only evaluate the bound recursion and the
/// global-existence conditions from suprema of the data.
namespace cypoise::unsteady {

struct PsiSample {
  double y;
  double psi;
};

struct UnsteadyData {
  double sup_f = 0.0;             ///< sup_T |f(T)|
  double sup_psi_prime = 0.0;     ///< sup_Y |Psi'(Y)|
  double sup_psi_weighted = 0.0;  ///< sup_Y 2 |Psi(Y)| / (R^2 - Y^2)
  std::vector<PsiSample> psi_samples;
  /// Time-scaling parameter; metadata only, it never enters the bounds.
  double beta = 1.0;

  void validate() const;

  /// Builds the suprema from sampled Psi (sorted radii on [0, R]). Psi' uses
  /// one-sided differences at the ends and centred ones inside; the weighted
  /// supremum skips Y = R where the ratio is 0/0.
  static UnsteadyData from_samples(std::vector<PsiSample> samples, double r, double sup_f,
                                   double beta = 1.0);
};

/// max{ sup|f|, sup|Psi'| / R, sup 2|Psi|/(R^2 - Y^2) }.
double m_value(const UnsteadyData& d, double r);

struct ForwardBackward {
  bool forward_backward = false;
  std::optional<double> eta0;
  std::optional<double> eta1;
  std::optional<double> eta2;  ///< absent for c = 1 (h has a single root)
};

/// True iff n < 0 and a (1 - (a+1)/n)^((n-1-a)/a) > (1-c)/c, i.e. the
/// equation is backward parabolic for gradients in (eta1, eta2). The roots
/// come from h itself, bracketed around eta0.
ForwardBackward forward_backward_check(const FluidParams& p, const EvalSettings& s = {});

struct K1Bound {
  double m_value = 0.0;
  double k1 = 0.0;
  int iterations = 0;
  bool converged = false;
  double fixed_point_residual = 0.0;
  std::vector<double> sequence;  ///< C_0, C_1, ...
};

/// Fixed point of C -> R M / [1 - c + c (1 + Cu^a C^a)^((n-1)/a)] iterated
/// from C_0 = R M / (1 - c). The map is increasing and C_1 <= C_0, so the
/// sequence decreases monotonically to K1 >= R M.
/// DomainError unless 0 < c < 1, n < 0, m >= 0, r > 0.
K1Bound k1_bound(const FluidParams& p, double r, double m, const EvalSettings& s = {});

/// Global classical existence conditions for the unsteady problem, using the
/// steady solution driven by b = sup|f|.
struct GlobalExistence {
  bool gradient_ok = false;
  bool envelope_ok = false;
  bool guaranteed = false;  ///< both hold: |W_Y| <= zeta1 for all T
  std::optional<double> zeta1;
  std::optional<double> steady_wall_gradient;  ///< F^-1(R sup|f| / 2)
  std::vector<std::string> notes;
};

GlobalExistence global_existence_check(const FluidParams& p, double r, const UnsteadyData& d,
                                       const EvalSettings& s = {});

struct BoundReport {
  ForwardBackward forward_backward;
  std::optional<K1Bound> k1;
  std::optional<GlobalExistence> existence;
};

}  // namespace cypoise::unsteady
