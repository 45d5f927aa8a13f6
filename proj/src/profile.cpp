#include "cypoise/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cypoise/model.hpp"

namespace cypoise::profile {

using regime::Regime;

void QuadratureSettings::validate() const {
  if (!(target_abs_err > 0.0)) throw DomainError("target_abs_err must be > 0");
  if (max_refinements < 0) throw DomainError("max_refinements must be >= 0");
  if (grid_size < 2) throw DomainError("grid_size must be >= 2");
}

namespace {

std::string format_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

using Integrand = std::function<double(double)>;
using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

// Width below which the remaining sliver next to a singular radius is
// approximated by a rectangle (the integrand is bounded there).
constexpr double kSliver = 1e-13;

struct Accumulator {
  double error = 0.0;
  bool exhausted = false;
};

// Adaptive bisection on top of a single 15-point Gauss-Kronrod pair per panel.
double adaptive(const Integrand& g, double a, double b, double tol, int depth, Accumulator& acc) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double err = 0.0;
  const double val =
      half * GK::integrate([&](double t) { return g(mid + half * t); }, -1.0, 1.0, 0, 0.0, &err);
  err *= std::abs(half);
  if (err <= tol) {
    acc.error += err;
    return val;
  }
  if (depth == 0) {
    acc.error += err;
    acc.exhausted = true;
    return val;
  }
  return adaptive(g, a, mid, 0.5 * tol, depth - 1, acc) +
         adaptive(g, mid, b, 0.5 * tol, depth - 1, acc);
}

// Geometric refinement from `far` toward a singular radius: halves the
// remaining distance each step.
double toward_singular(const Integrand& g, double far, double sing, double tol_density, int depth,
                       double scale, Accumulator& acc) {
  double total = 0.0;
  double x = far;
  while (std::abs(sing - x) > kSliver * scale) {
    const double next = x + 0.5 * (sing - x);
    const double sub = adaptive(g, std::min(x, next), std::max(x, next),
                                tol_density * std::abs(next - x), depth, acc);
    total += next > x ? sub : -sub;
    x = next;
  }
  total += g(sing) * (sing - x);
  return total;
}

// Integral of g over [a, b] with singular flags at either end.
double panel_integral(const Integrand& g, double a, double b, bool sing_a, bool sing_b,
                      double tol_density, int depth, double scale, Accumulator& acc) {
  if (sing_a && sing_b) {
    const double mid = 0.5 * (a + b);
    return panel_integral(g, a, mid, true, false, tol_density, depth, scale, acc) +
           panel_integral(g, mid, b, false, true, tol_density, depth, scale, acc);
  }
  if (sing_b) return toward_singular(g, a, b, tol_density, depth, scale, acc);
  if (sing_a) return -toward_singular(g, b, a, tol_density, depth, scale, acc);
  return adaptive(g, a, b, tol_density * (b - a), depth, acc);
}

std::vector<double> uniform_grid(double y_end, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = y_end * i / (n - 1);
  g.back() = y_end;
  return g;
}

// Merges singular radii into the grid; coincident points collapse onto the
// singular value so markers land exactly.
std::vector<double> merge_points(std::vector<double> grid, const std::vector<double>& singular,
                                 double y_end) {
  const double eps = 4.0 * std::numeric_limits<double>::epsilon() * y_end;
  for (double s : singular) {
    auto it = std::find_if(grid.begin(), grid.end(), [&](double y) { return std::abs(y - s) <= eps; });
    if (it != grid.end()) {
      *it = s;
    } else {
      grid.push_back(s);
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

bool is_singular(double y, const std::vector<double>& singular) {
  return std::find(singular.begin(), singular.end(), y) != singular.end();
}

// An endpoint closer to a singular radius outside the panel than the panel is
// wide also needs geometric refinement toward it.
bool needs_refinement(double y, double width, const std::vector<double>& singular) {
  return std::any_of(singular.begin(), singular.end(),
                     [&](double s) { return s == y || std::abs(s - y) < width; });
}

// Radii where U_YY is unbounded by construction for the classified regime.
std::vector<double> structural_singularities(const regime::RegimeReport& rep, double r) {
  switch (rep.regime) {
    case Regime::GeneralizedInteriorSingular: return {*rep.critical.y_singular};
    case Regime::ClassicalBoundarySingular: return {r};
    case Regime::NoClassicalSolution: return {*rep.critical.y_singular};
    default: return {};
  }
}

void reject_unbounded_gradient(const FluidParams& p, const regime::RegimeReport& rep) {
  if (p.c() == 1.0 && p.n() == 0.0 && !p.newtonian() &&
      (rep.regime == Regime::ClassicalBoundarySingular ||
       rep.regime == Regime::NoClassicalSolution)) {
    throw DomainError("U_Y is unbounded at the branch end (c = 1, n = 0, bR/2 >= 1/Cu)");
  }
}

enum class Anchor { Wall, Centre };

VelocityProfile assemble(const FluidParams& p, const FlowParams& f, const regime::RegimeReport& rep,
                         std::vector<double> grid, double y_end, Anchor anchor,
                         const QuadratureSettings& q, const EvalSettings& s) {
  VelocityProfile prof;
  prof.regime = rep.regime;
  prof.sign = f.sign();
  prof.y_end = y_end;
  const std::vector<double> singular = structural_singularities(rep, f.r());
  prof.grid = merge_points(std::move(grid), singular, y_end);
  const std::size_t n = prof.grid.size();

  if (rep.regime == Regime::TrivialZeroGradient) {
    prof.u.assign(n, 0.0);
    prof.u_y.assign(n, 0.0);
    prof.u_yy.assign(n, 0.0);
    return prof;
  }

  const inverse::InverseBranch br = inverse::admissible_branch(p, s);
  const double b = f.b();
  prof.u_y = shear_rate_profile(p, FlowParams(b, f.r()), br, prof.grid, s);

  prof.u_yy.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double fp = model::flux_prime(p, prof.u_y[i]);
    if (is_singular(prof.grid[i], singular) || fp <= s.abs_tol) {
      prof.u_yy[i] = std::nullopt;
      prof.singular_points.push_back(prof.grid[i]);
    } else {
      prof.u_yy[i] = b / (2.0 * fp);
    }
  }

  const Integrand g = [&](double y) { return inverse::invert_flux(p, br, 0.5 * b * y, s); };
  const double gmax = std::max(prof.u_y.back(), 1.0);
  const double tol_density = q.target_abs_err / (y_end * gmax);
  Accumulator acc;
  std::vector<double> pieces(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = prof.grid[i];
    const double c = prof.grid[i + 1];
    pieces[i] = panel_integral(g, a, c, needs_refinement(a, c - a, singular),
                               needs_refinement(c, c - a, singular), tol_density, q.max_refinements,
                               y_end, acc);
  }
  prof.quadrature_error = acc.error;
  if (acc.exhausted && acc.error > q.target_abs_err) {
    throw ConvergenceError("quadrature error estimate " + format_sci(acc.error) +
                           " above target after " + std::to_string(q.max_refinements) +
                           " refinements");
  }

  prof.u.assign(n, 0.0);
  if (anchor == Anchor::Wall) {
    for (std::size_t i = n - 1; i-- > 0;) prof.u[i] = prof.u[i + 1] - pieces[i];
  } else {
    for (std::size_t i = 1; i < n; ++i) prof.u[i] = prof.u[i - 1] + pieces[i - 1];
  }

  prof.max_residual = ode_residual(p, FlowParams(b, f.r()), prof);

  if (f.sign() < 0) {
    for (std::size_t i = 0; i < n; ++i) {
      prof.u[i] = -prof.u[i];
      prof.u_y[i] = -prof.u_y[i];
      if (prof.u_yy[i]) prof.u_yy[i] = -*prof.u_yy[i];
    }
  }
  return prof;
}

std::vector<double> checked_grid(std::span<const double> grid, double y_end) {
  std::vector<double> g(grid.begin(), grid.end());
  for (double y : g) {
    if (!(y >= 0.0 && y <= y_end)) throw DomainError("grid point outside [0, R]");
  }
  if (!std::is_sorted(g.begin(), g.end())) throw DomainError("grid must be sorted");
  if (g.empty() || g.front() != 0.0) g.insert(g.begin(), 0.0);
  if (g.back() != y_end) g.push_back(y_end);
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

regime::RegimeReport solvable_report(const FluidParams& p, const FlowParams& f,
                                     const EvalSettings& s) {
  regime::RegimeReport rep = regime::classify(p, f, s);
  if (rep.regime == Regime::NoClassicalSolution) {
    throw RegimeMismatchError("no classical solution on [0, R]; use partial_profile");
  }
  reject_unbounded_gradient(p, rep);
  return rep;
}

}  // namespace

std::vector<double> shear_rate_profile(const FluidParams& p, const FlowParams& f,
                                       const inverse::InverseBranch& br,
                                       std::span<const double> grid, const EvalSettings& s) {
  std::vector<double> out;
  out.reserve(grid.size());
  for (double y : grid) {
    if (!(y >= 0.0)) throw DomainError("radius must be >= 0");
    out.push_back(f.sign() * inverse::invert_flux(p, br, 0.5 * f.b() * y, s));
  }
  return out;
}

VelocityProfile velocity_profile(const FluidParams& p, const FlowParams& f,
                                 const QuadratureSettings& q, const EvalSettings& s) {
  q.validate();
  const regime::RegimeReport rep = solvable_report(p, f, s);
  return assemble(p, f, rep, uniform_grid(f.r(), q.grid_size), f.r(), Anchor::Wall, q, s);
}

VelocityProfile velocity_profile(const FluidParams& p, const FlowParams& f,
                                 std::span<const double> grid, const QuadratureSettings& q,
                                 const EvalSettings& s) {
  q.validate();
  const regime::RegimeReport rep = solvable_report(p, f, s);
  return assemble(p, f, rep, checked_grid(grid, f.r()), f.r(), Anchor::Wall, q, s);
}

VelocityProfile partial_profile(const FluidParams& p, const FlowParams& f,
                                const QuadratureSettings& q, const EvalSettings& s) {
  q.validate();
  const regime::RegimeReport rep = regime::classify(p, f, s);
  if (rep.regime != Regime::NoClassicalSolution) {
    throw RegimeMismatchError("partial_profile applies only when no classical solution exists");
  }
  reject_unbounded_gradient(p, rep);
  const double y1 = *rep.critical.y_singular;
  VelocityProfile prof =
      assemble(p, f, rep, uniform_grid(y1, q.grid_size), y1, Anchor::Centre, q, s);
  prof.undetermined_constant = true;
  return prof;
}

SecondDerivative second_derivative_at(const FluidParams& p, const FlowParams& f, double y,
                                      const EvalSettings& s) {
  const regime::RegimeReport rep = regime::classify(p, f, s);
  const double y_end =
      rep.regime == Regime::NoClassicalSolution ? *rep.critical.y_singular : f.r();
  if (!(y >= 0.0 && y <= y_end)) throw DomainError("radius outside [0, y_end]");
  if (rep.regime == Regime::TrivialZeroGradient) return 0.0;
  for (double ys : structural_singularities(rep, f.r())) {
    if (std::abs(y - ys) <= s.eq_tol * std::max(ys, 1.0)) return std::nullopt;
  }
  reject_unbounded_gradient(p, rep);
  const inverse::InverseBranch br = inverse::admissible_branch(p, s);
  const double fp = model::flux_prime(p, inverse::invert_flux(p, br, 0.5 * f.b() * y, s));
  if (fp <= s.abs_tol) return std::nullopt;
  return f.sign() * f.b() / (2.0 * fp);
}

double ode_residual(const FluidParams& p, const FlowParams& f, const VelocityProfile& prof) {
  double worst = 0.0;
  for (std::size_t i = 0; i < prof.grid.size(); ++i) {
    const double r = std::abs(model::flux(p, std::abs(prof.u_y[i])) - 0.5 * f.b() * prof.grid[i]);
    worst = std::max(worst, r);
  }
  return worst;
}

}  // namespace cypoise::profile
