#pragma once

// Test-only oracles. Nothing in here calls into the library's inversion,
// root-finding or quadrature paths; the closed-form law is re-evaluated in
// long double and inverted by plain bisection.

#include <cmath>
#include <functional>
#include <random>

#include "cypoise/params.hpp"

namespace cypoise::testing {

inline long double ref_flux(const FluidParams& p, long double z) {
  if (z == 0.0L) return 0.0L;
  const long double a = p.alpha();
  const long double x = std::pow(static_cast<long double>(p.cu()) * z, a);
  return (1.0L - p.c() + p.c() * std::pow(1.0L + x, (p.n() - 1.0L) / a)) * z;
}

/// Bisection on [0, hi]; values of x beyond F(hi) map to hi.
inline long double ref_inverse(const FluidParams& p, long double x, long double hi) {
  if (x <= 0.0L) return 0.0L;
  if (x >= ref_flux(p, hi)) return hi;
  long double lo = 0.0L;
  for (int i = 0; i < 200 && hi - lo > 1e-19L * hi; ++i) {
    const long double mid = 0.5L * (lo + hi);
    (ref_flux(p, mid) < x ? lo : hi) = mid;
  }
  return 0.5L * (lo + hi);
}

/// -int_0^R F^-1(b s / 2) ds by the composite trapezoid rule.
inline double trapezoid_centreline(const FluidParams& p, double b, double r, long double hi,
                                   int panels = 100000) {
  const long double h = static_cast<long double>(r) / panels;
  long double sum = 0.0L;
  for (int i = 0; i <= panels; ++i) {
    const long double w = (i == 0 || i == panels) ? 0.5L : 1.0L;
    sum += w * ref_inverse(p, 0.5L * b * (h * i), hi);
  }
  return static_cast<double>(-sum * h);
}

/// Trapezoid of F^-1(b s / 2) over [0, y].
inline double trapezoid_rise(const FluidParams& p, double b, double y, long double hi,
                             int panels = 100000) {
  return -trapezoid_centreline(p, b, y, hi, panels);
}

inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

/// Uniform draw helper with a fixed seed per test.
class Draws {
 public:
  explicit Draws(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  /// Shear-thinning draw with c in (0, 1).
  FluidParams thinning() {
    return FluidParams(uniform(-8.0, 0.9), uniform(0.5, 8.0), uniform(0.05, 0.95), uniform(0.2, 4.0));
  }

  /// Draw where F' has two positive roots (0 < c < 1, n < 0).
  FluidParams two_root() {
    const double n = uniform(-8.0, -0.5);
    const double a = uniform(0.5, 8.0);
    const double d = std::pow(1.0 - (a + 1.0) / n, (n - 1.0 - a) / a);
    const double c_min = 1.0 / (1.0 + a * d);
    const double c = c_min + (1.0 - c_min) * uniform(0.05, 0.95);
    return FluidParams(n, a, c, uniform(0.2, 4.0));
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace cypoise::testing
