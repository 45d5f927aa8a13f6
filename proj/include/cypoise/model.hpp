#pragma once

#include "cypoise/params.hpp"

/// Pointwise evaluation of the Carreau-Yasuda law and the flux function
///
///   F(zeta) = [1 - c + c (1 + Cu^a zeta^a)^((n-1)/a)] zeta,
///
/// i.e. shear stress as a function of the shear-rate magnitude. The steady
/// pipe problem integrates once to F(U_Y(Y)) = b Y / 2, so every other module
/// is built on these four functions. All of them are pure.
namespace cypoise::model {

/// mu_app(gamma) = 1 - c + c (1 + Cu^a gamma^a)^((n-1)/a).
double apparent_viscosity(const FluidParams& p, double gamma);

/// F(zeta) = mu_app(zeta) zeta. F(0) == 0 exactly.
double flux(const FluidParams& p, double zeta);

/// F(zeta) - x evaluated in extended precision. Root searches use it so that
/// the sign stays reliable where F' vanishes (F(zeta) - x ~ (zeta - zeta*)^3
/// around a degenerate inflection).
double flux_residual(const FluidParams& p, double zeta, double x);

/// F'(zeta) = 1 - c + c (1 + x)^((n-1-a)/a) (1 + n x), x = Cu^a zeta^a.
double flux_prime(const FluidParams& p, double zeta);

/// F''(zeta) = c (n-1) Cu^a zeta^(a-1) (1 + x)^((n-1-2a)/a) (a + 1 + n x).
///
/// At zeta = 0 this returns the one-sided limit: 0 for a > 1, 2 c (n-1) Cu
/// for a = 1. For a < 1 the limit is unbounded and DomainError is thrown.
double flux_second(const FluidParams& p, double zeta);

/// h(eta) = 1 - c + c Phi(eta),
/// Phi(eta) = (1-n)(1 + x)^((n-1-a)/a) + n (1 + x)^((n-1)/a).
///
/// Parabolicity coefficient of the unsteady equation. Algebraically equal to
/// F' but evaluated from its own expansion, so the two can cross-check.
double h_function(const FluidParams& p, double eta);

}  // namespace cypoise::model
