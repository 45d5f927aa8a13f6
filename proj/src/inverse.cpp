#include "cypoise/inverse.hpp"

#include <cmath>
#include <string>

#include "cypoise/model.hpp"
#include "cypoise/regime.hpp"
#include "cypoise/roots.hpp"

namespace cypoise::inverse {

namespace {

// Fraction of upper_flux above which the search switches to bisection.
constexpr double kEndpointBand = 1e-3;

}  // namespace

InverseBranch admissible_branch(const FluidParams& p, const EvalSettings& s) {
  s.validate();
  InverseBranch br;
  if (p.newtonian() || p.n() >= 0.0) {
    if (p.c() == 1.0 && p.n() == 0.0 && !p.newtonian()) {
      br.upper_flux = 1.0 / p.cu();
      br.flux_is_supremum = true;
    }
    return br;
  }
  if (p.c() < 1.0 && regime::discriminant(p, s).comparison != regime::Comparison::Above) {
    return br;
  }
  const regime::ZetaRoots zr = regime::find_zeta_roots(p, s);
  br.upper_zeta = *zr.zeta1;
  br.upper_flux = model::flux(p, br.upper_zeta);
  return br;
}

bool at_branch_end(const InverseBranch& br, double x, const EvalSettings& s) {
  if (!br.bounded_flux() || br.flux_is_supremum) return false;
  return x >= br.upper_flux && x <= br.upper_flux * (1.0 + s.eq_tol);
}

double invert_flux(const FluidParams& p, const InverseBranch& br, double x, const EvalSettings& s) {
  if (!(x >= 0.0)) throw DomainError("flux value must be >= 0");
  if (x == 0.0) return 0.0;
  if (p.newtonian()) return x;

  if (br.bounded_flux()) {
    if (br.flux_is_supremum) {
      if (x >= br.upper_flux) {
        throw OutOfRangeError("flux " + std::to_string(x) + " is not below sup F = " +
                              std::to_string(br.upper_flux));
      }
    } else if (x >= br.upper_flux) {
      if (at_branch_end(br, x, s)) return br.upper_zeta;
      throw OutOfRangeError("flux " + std::to_string(x) + " exceeds F(zeta1) = " +
                            std::to_string(br.upper_flux));
    }
  }

  auto residual = [&](double z) { return model::flux_residual(p, z, x); };

  if (br.bounded_zeta()) {
    const auto method = x > (1.0 - kEndpointBand) * br.upper_flux ? roots::Method::Bisection
                                                                   : roots::Method::Toms748;
    return roots::find_root(residual, 0.0, br.upper_zeta, s, method);
  }

  // Unbounded branch: grow the bracket until F(hi) >= x.
  double lo = 0.0;
  double hi = x;
  int doublings = 0;
  while (residual(hi) < 0.0) {
    if (++doublings > s.max_iter) {
      throw ConvergenceError("could not bracket F^-1(" + std::to_string(x) + ")");
    }
    lo = hi;
    hi *= 2.0;
  }
  return roots::find_root(residual, lo, hi, s);
}

}  // namespace cypoise::inverse
