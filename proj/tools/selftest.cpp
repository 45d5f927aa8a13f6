#include "selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "cypoise/inverse.hpp"
#include "cypoise/model.hpp"
#include "cypoise/profile.hpp"
#include "cypoise/regime.hpp"
#include "cypoise/unsteady.hpp"
#include "report.hpp"

namespace cypoise::cli {

namespace {

using regime::Regime;

// Collects the sub-conditions of one check; the first failure is reported.
class Probe {
 public:
  void near(const std::string& what, double got, double want, double tol) {
    std::ostringstream os;
    os << what << " = " << format_number(got) << " (want " << format_number(want) << " +- "
       << format_number(tol) << ")";
    record(std::abs(got - want) <= tol, os.str());
  }
  void at_most(const std::string& what, double got, double limit) {
    std::ostringstream os;
    os << what << " = " << format_number(got) << " (limit " << format_number(limit) << ")";
    record(got <= limit, os.str());
  }
  void require(const std::string& what, bool ok) { record(ok, what); }

  bool passed() const { return failure_.empty(); }
  std::string detail() const { return passed() ? summary_ : failure_; }

 private:
  void record(bool ok, const std::string& text) {
    if (!ok && failure_.empty()) failure_ = text;
    if (std::find(parts_.begin(), parts_.end(), text) == parts_.end()) {
      parts_.push_back(text);
      summary_ += (summary_.empty() ? "" : "; ") + text;
    }
  }
  std::vector<std::string> parts_;
  std::string summary_;
  std::string failure_;
};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  FluidParams thinning() {
    return FluidParams(uniform(-8, 0.9), uniform(0.5, 8), uniform(0.05, 0.95), uniform(0.2, 4));
  }
  // 0 < c < 1 and n < 0 with F' vanishing twice.
  FluidParams two_root() {
    const double n = uniform(-8, -0.5);
    const double a = uniform(0.5, 8);
    const double d = std::pow(1.0 - (a + 1.0) / n, (n - 1.0 - a) / a);
    const double c_min = 1.0 / (1.0 + a * d);
    return FluidParams(n, a, c_min + (1.0 - c_min) * uniform(0.05, 0.95), uniform(0.2, 4));
  }
  FluidParams unit_c() { return FluidParams(uniform(-8, -0.2), uniform(0.5, 8), 1.0, uniform(0.2, 4)); }

 private:
  std::mt19937_64 rng_;
};

CheckResult run_check(const std::string& name, const std::function<void(Probe&)>& body) {
  Probe probe;
  try {
    body(probe);
  } catch (const std::exception& e) {
    return {name, false, std::string("exception: ") + e.what()};
  }
  return {name, probe.passed(), probe.detail()};
}

EvalSettings boundary_case_settings(EvalSettings s) {
  // the quoted F(zeta1) = 0.5 holds only to about 2.4e-5
  s.eq_tol = std::max(s.eq_tol, 1e-4);
  return s;
}

void golden_smooth(Probe& pr, const EvalSettings& s) {
  const FluidParams p(-10, 10, 1, 1);
  const FlowParams f(1, 1);
  const regime::RegimeReport rep = regime::classify(p, f, s);
  pr.require("regime ClassicalSmooth", rep.regime == Regime::ClassicalSmooth);
  pr.near("zeta1", rep.critical.zeta1.value_or(NAN), 0.7943, 1e-3);
  pr.near("F(zeta1)", rep.critical.f_at_zeta1.value_or(NAN), 0.7153, 1e-3);
  pr.near("Y1", rep.critical.y_singular.value_or(NAN), 1.4305, 2e-3);
  const profile::VelocityProfile prof = profile::velocity_profile(p, f, profile::QuadratureSettings{}, s);
  pr.near("U(0)", prof.u.front(), -0.25026, 1e-3);
}

void golden_boundary(Probe& pr, const EvalSettings& base) {
  const EvalSettings s = boundary_case_settings(base);
  const FluidParams p(-5, 3.9, 1, 1);
  const FlowParams f(1, 1);
  const regime::RegimeReport rep = regime::classify(p, f, s);
  pr.require("regime ClassicalBoundarySingular", rep.regime == Regime::ClassicalBoundarySingular);
  pr.near("zeta1", rep.critical.zeta1.value_or(NAN), 0.662, 1e-3);
  pr.near("F(zeta1)", rep.critical.f_at_zeta1.value_or(NAN), 0.5, 1e-3);
  const profile::VelocityProfile prof = profile::velocity_profile(p, f, profile::QuadratureSettings{}, s);
  pr.require("U_YY unbounded at Y = R", !prof.u_yy.back().has_value() && prof.grid.back() == 1.0);
  pr.near("U(0)", prof.u.front(), -0.26356, 1e-3);
}

void golden_no_solution(Probe& pr, const EvalSettings& s) {
  const FluidParams p(-3, 2, 1, 1);
  const FlowParams f(1, 1);
  const regime::RegimeReport rep = regime::classify(p, f, s);
  pr.require("regime NoClassicalSolution", rep.regime == Regime::NoClassicalSolution);
  pr.near("F(zeta1)", rep.critical.f_at_zeta1.value_or(NAN), 0.325, 1e-3);
  pr.near("Y1", rep.critical.y_singular.value_or(NAN), 0.65, 1e-3);
  const profile::VelocityProfile prof = profile::partial_profile(p, f, profile::QuadratureSettings{}, s);
  pr.near("partial profile end", prof.y_end, rep.critical.y_singular.value_or(NAN), 1e-12);
}

void newtonian(Probe& pr, const EvalSettings& s) {
  for (const FluidParams& p : {FluidParams(-3, 2, 0, 1), FluidParams(1, 2, 0.7, 1)}) {
    const profile::VelocityProfile prof =
        profile::velocity_profile(p, FlowParams(1, 1), profile::QuadratureSettings{}, s);
    double err = 0.0;
    for (std::size_t i = 0; i < prof.grid.size(); ++i) {
      err = std::max(err, std::abs(prof.u[i] - (prof.grid[i] * prof.grid[i] - 1.0) / 4.0));
    }
    pr.require("101-point grid", prof.grid.size() == 101);
    pr.at_most("max |U - (Y^2 - 1)/4|", err, 1e-10);
  }
}

void first_integral(Probe& pr, const EvalSettings& s) {
  Sampler draw(5);
  int done = 0;
  double worst = 0.0;
  for (int attempt = 0; attempt < 1000 && done < 50; ++attempt) {
    FluidParams p = draw.thinning();
    if (attempt % 3 == 1) p = draw.two_root();
    if (attempt % 3 == 2) p = draw.unit_c();
    const FlowParams f(draw.uniform(0.05, 2), draw.uniform(0.3, 2));
    if (!regime::solvable(regime::classify(p, f, s).regime)) continue;
    const profile::VelocityProfile prof = profile::velocity_profile(p, f, profile::QuadratureSettings{}, s);
    worst = std::max(worst, profile::ode_residual(p, f, prof));
    ++done;
  }
  pr.require("50 solvable draws", done == 50);
  pr.at_most("max ode_residual", worst, 1e-6);
}

void round_trip(Probe& pr, const EvalSettings& s) {
  Sampler draw(6);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    FluidParams p = draw.thinning();
    if (i % 3 == 0) p = draw.two_root();
    if (i % 3 == 1) p = draw.unit_c();
    const inverse::InverseBranch br = inverse::admissible_branch(p, s);
    const double top = br.bounded_zeta() ? br.upper_zeta : 20.0;
    const double z = draw.uniform(0.0, top * (1 - 1e-6));
    const double back = inverse::invert_flux(p, br, model::flux(p, z), s);
    const bool near_end = br.bounded_zeta() && top - z < 1e-3;
    const double tol = near_end ? 1e-3 : 1e-6 * std::max(1.0, z);
    worst = std::max(worst, std::abs(back - z) / tol);
  }
  pr.at_most("max |F^-1(F(z)) - z| / tol", worst, 1.0);
}

void eta_zeta(Probe& pr, const EvalSettings& s) {
  Sampler draw(7);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const FluidParams p = draw.two_root();
    const unsteady::ForwardBackward fb = unsteady::forward_backward_check(p, s);
    const regime::ZetaRoots zr = regime::find_zeta_roots(p, s);
    pr.require("forward-backward detected", fb.forward_backward && fb.eta1 && fb.eta2);
    if (!fb.eta1 || !fb.eta2) return;
    worst = std::max(worst, std::abs(*fb.eta1 - *zr.zeta1) / *zr.zeta1);
    worst = std::max(worst, std::abs(*fb.eta2 - *zr.zeta2) / *zr.zeta2);
  }
  pr.at_most("max relative |eta - zeta|", worst, 1e-9);
}

void generalized(Probe& pr, const EvalSettings& s) {
  const FluidParams p(-3, 2, 0.8, 1);
  const FlowParams f(1, 1);
  const regime::RegimeReport rep = regime::classify(p, f, s);
  pr.require("regime GeneralizedInteriorSingular", rep.regime == Regime::GeneralizedInteriorSingular);
  pr.require("equality branch detected", rep.equality_detected);
  const double y0 = regime::singular_radius(p, f, regime::SingularKind::InteriorY0, s);
  pr.near("Y0", y0, 0.8, 1e-9);
  const double h = 1e-11;
  const std::vector<double> grid{y0 - h, y0, y0 + h};
  const profile::VelocityProfile prof =
      profile::velocity_profile(p, f, grid, profile::QuadratureSettings{}, s);
  const auto at = [&](double y) {
    const auto it = std::lower_bound(prof.grid.begin(), prof.grid.end(), y);
    return static_cast<std::size_t>(it - prof.grid.begin());
  };
  const std::size_t k = at(y0);
  pr.require("U_YY unbounded at Y0", k < prof.grid.size() && !prof.u_yy[k].has_value());
  const double left = (prof.u[k] - prof.u[k - 1]) / (prof.grid[k] - prof.grid[k - 1]);
  const double right = (prof.u[k + 1] - prof.u[k]) / (prof.grid[k + 1] - prof.grid[k]);
  pr.near("one-sided slope difference at Y0", right - left, 0.0, 1e-3);
}

void k1(Probe& pr, const EvalSettings& s) {
  const unsteady::K1Bound k = unsteady::k1_bound(FluidParams(-1, 2, 0.5, 1), 1.0, 0.1, s);
  pr.near("K1", k.k1, 0.10050, 1e-4);
  pr.near("C0", k.sequence.empty() ? NAN : k.sequence.front(), 0.2, 1e-15);
  bool monotone = true;
  for (std::size_t i = 1; i < k.sequence.size(); ++i) monotone &= k.sequence[i] <= k.sequence[i - 1];
  pr.require("sequence non-increasing", monotone);
  pr.at_most("fixed-point residual", k.fixed_point_residual, 1e-10);
}

void frontier(Probe& pr, const EvalSettings& s) {
  const FluidParams p(-3, 2, 1, 1);
  const double fz1 = model::flux(p, *regime::find_zeta_roots(p, s).zeta1);
  const auto regime_at = [&](double b) { return regime::classify(p, FlowParams(b, 1.0), s).regime; };
  // Bisects for the first b where `past` holds, starting from a classical b.
  const auto edge = [&](const std::function<bool(Regime)>& past) {
    double lo = 0.1;
    double hi = 1.0;
    pr.require("bracket straddles the frontier", !past(regime_at(lo)) && past(regime_at(hi)));
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
      const double mid = 0.5 * (lo + hi);
      (past(regime_at(mid)) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
  };
  // The equality band around the frontier has width ~ eq_tol; its centre is
  // the frontier up to O(eq_tol^2).
  const double leave_smooth = edge([](Regime r) { return r != Regime::ClassicalSmooth; });
  const double reach_none = edge([](Regime r) { return r == Regime::NoClassicalSolution; });
  pr.near("frontier b", 0.5 * (leave_smooth + reach_none), 2.0 * fz1, 1e-6);
}

void derivatives(Probe& pr, const EvalSettings&) {
  Sampler draw(11);
  double worst1 = 0.0;
  double worst2 = 0.0;
  for (int i = 0; i < 100; ++i) {
    const FluidParams p = draw.thinning();
    const double z = draw.uniform(0.01, 10.0);
    const double h = 1e-5 * z;
    const double fd1 = (model::flux(p, z + h) - model::flux(p, z - h)) / (2 * h);
    const double fd2 = (model::flux_prime(p, z + h) - model::flux_prime(p, z - h)) / (2 * h);
    const double d1 = model::flux_prime(p, z);
    const double d2 = model::flux_second(p, z);
    worst1 = std::max(worst1, std::abs(d1 - fd1) / std::max(std::abs(d1), 1e-3));
    worst2 = std::max(worst2, std::abs(d2 - fd2) / std::max(std::abs(d2), 1e-3));
  }
  pr.at_most("flux_prime relative error", worst1, 1e-6);
  pr.at_most("flux_second relative error", worst2, 1e-5);
}

}  // namespace

std::vector<CheckResult> run_selftest(const EvalSettings& s) {
  s.validate();
  const std::vector<std::pair<std::string, std::function<void(Probe&, const EvalSettings&)>>> checks{
      {"golden smooth c=1 n=-10", golden_smooth},
      {"golden boundary-singular c=1 n=-5", golden_boundary},
      {"golden no-solution c=1 n=-3", golden_no_solution},
      {"Newtonian parabola", newtonian},
      {"first-integral residual", first_integral},
      {"inversion round trip", round_trip},
      {"eta roots equal zeta roots", eta_zeta},
      {"generalized solution c=0.8", generalized},
      {"K1 bound", k1},
      {"regime frontier in b", frontier},
      {"derivative consistency", derivatives},
  };
  std::vector<CheckResult> out;
  for (const auto& [name, body] : checks) {
    out.push_back(run_check(name, [&](Probe& pr) { body(pr, s); }));
  }
  return out;
}

}  // namespace cypoise::cli
