#include "cypoise/model.hpp"

#include <cmath>

namespace cypoise::model {

namespace {

void require_nonneg(double v, const char* what) {
  if (!(v >= 0.0)) throw DomainError(std::string(what) + " must be >= 0");
}

// Cu^a zeta^a; 1 + x >= 1 so later powers never see a negative base.
double scaled(const FluidParams& p, double zeta) {
  return std::pow(p.cu() * zeta, p.alpha());
}

// (1 + x)^e computed as exp(e log1p(x)).
double onep_pow(double x, double e) { return std::exp(e * std::log1p(x)); }

}  // namespace

double apparent_viscosity(const FluidParams& p, double gamma) {
  require_nonneg(gamma, "shear rate");
  if (p.newtonian()) return 1.0;
  const double a = p.alpha();
  return 1.0 - p.c() + p.c() * onep_pow(scaled(p, gamma), (p.n() - 1.0) / a);
}

double flux(const FluidParams& p, double zeta) {
  require_nonneg(zeta, "shear rate");
  if (zeta == 0.0) return 0.0;
  return apparent_viscosity(p, zeta) * zeta;
}

double flux_residual(const FluidParams& p, double zeta, double x) {
  require_nonneg(zeta, "shear rate");
  if (p.newtonian() || zeta == 0.0) return zeta - x;
  const long double a = p.alpha();
  const long double z = zeta;
  const long double scaled_ld = std::pow(static_cast<long double>(p.cu()) * z, a);
  const long double visc =
      1.0L - p.c() + p.c() * std::exp((p.n() - 1.0L) / a * std::log1p(scaled_ld));
  return static_cast<double>(visc * z - static_cast<long double>(x));
}

double flux_prime(const FluidParams& p, double zeta) {
  require_nonneg(zeta, "shear rate");
  if (p.newtonian()) return 1.0;
  const double a = p.alpha();
  const double n = p.n();
  const double x = scaled(p, zeta);
  return 1.0 - p.c() + p.c() * onep_pow(x, (n - 1.0 - a) / a) * (1.0 + n * x);
}

double flux_second(const FluidParams& p, double zeta) {
  require_nonneg(zeta, "shear rate");
  if (p.newtonian()) return 0.0;
  const double a = p.alpha();
  const double n = p.n();
  const double cu = p.cu();
  if (zeta == 0.0) {
    if (a > 1.0) return 0.0;
    if (a == 1.0) return 2.0 * p.c() * (n - 1.0) * cu;
    throw DomainError("flux_second is unbounded at zero shear rate for alpha < 1");
  }
  const double x = scaled(p, zeta);
  // Cu^a zeta^(a-1) == Cu (Cu zeta)^(a-1)
  const double lead = cu * std::pow(cu * zeta, a - 1.0);
  return p.c() * (n - 1.0) * lead * onep_pow(x, (n - 1.0 - 2.0 * a) / a) * (a + 1.0 + n * x);
}

double h_function(const FluidParams& p, double eta) {
  require_nonneg(eta, "shear rate");
  if (p.newtonian()) return 1.0;
  const double a = p.alpha();
  const double n = p.n();
  const double x = scaled(p, eta);
  const double phi = (1.0 - n) * onep_pow(x, (n - 1.0 - a) / a) + n * onep_pow(x, (n - 1.0) / a);
  return 1.0 - p.c() + p.c() * phi;
}

}  // namespace cypoise::model
