#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "cypoise/params.hpp"

// Bracketed scalar root finding shared by the solver modules.
// Both methods keep a sign-change bracket at every step, so they
// always converge; TOMS 748 adds superlinear interpolation steps.
namespace cypoise::roots {

enum class Method { Toms748, Bisection };

/// Terminates once the bracket width is <= max(abs_tol, rel_tol * |x|).
struct WidthTolerance {
  double abs_tol;
  double rel_tol;
  bool operator()(double a, double b) const {
    return std::abs(b - a) <= std::max(abs_tol, rel_tol * std::max(std::abs(a), std::abs(b)));
  }
};

/// Root of f in [lo, hi]. Requires f(lo) and f(hi) of opposite sign (or one
/// of them zero). Returns the final bracket endpoint with the smaller |f|.
template <typename Fn>
double find_root(Fn&& f, double lo, double hi, const EvalSettings& s,
                 Method method = Method::Toms748) {
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw NoRootError("no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) +
                      "]");
  }
  const WidthTolerance tol{s.abs_tol, s.rel_tol};
  std::uintmax_t iters = static_cast<std::uintmax_t>(s.max_iter);
  std::pair<double, double> bracket;
  if (method == Method::Toms748) {
    bracket = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
  } else {
    bracket = boost::math::tools::bisect(f, lo, hi, tol, iters);
  }
  const auto [a, b] = bracket;
  if (a == b) return a;  // exact zero hit
  if (!tol(a, b)) {
    throw ConvergenceError("root bracket did not shrink below tolerance in " +
                           std::to_string(s.max_iter) + " iterations");
  }
  return std::abs(f(a)) <= std::abs(f(b)) ? a : b;
}

}  // namespace cypoise::roots
