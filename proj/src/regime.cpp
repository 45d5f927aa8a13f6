#include "cypoise/regime.hpp"

#include <cmath>

#include "cypoise/model.hpp"
#include "cypoise/roots.hpp"

namespace cypoise::regime {

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::TrivialZeroGradient: return "TrivialZeroGradient";
    case Regime::Newtonian: return "Newtonian";
    case Regime::ClassicalSmooth: return "ClassicalSmooth";
    case Regime::ClassicalBoundarySingular: return "ClassicalBoundarySingular";
    case Regime::GeneralizedInteriorSingular: return "GeneralizedInteriorSingular";
    case Regime::NoClassicalSolution: return "NoClassicalSolution";
  }
  return "?";
}

std::string_view to_string(Comparison c) {
  switch (c) {
    case Comparison::Below: return "Below";
    case Comparison::Equal: return "Equal";
    case Comparison::Above: return "Above";
  }
  return "?";
}

Comparison compare(double lhs, double rhs, double eq_tol) {
  if (std::abs(lhs - rhs) <= eq_tol * std::max(std::abs(lhs), std::abs(rhs))) {
    return Comparison::Equal;
  }
  return lhs < rhs ? Comparison::Below : Comparison::Above;
}

int regime_code(Regime r) {
  switch (r) {
    case Regime::ClassicalBoundarySingular: return 10;
    case Regime::GeneralizedInteriorSingular: return 20;
    case Regime::NoClassicalSolution: return 30;
    default: return 0;
  }
}

bool solvable(Regime r) { return r != Regime::NoClassicalSolution; }

double zeta_naught(const FluidParams& p) {
  if (!(p.n() < 0.0) || p.cu() == 0.0) {
    throw DomainError("zeta0 exists only for n < 0 and Cu > 0");
  }
  return std::pow(-(p.alpha() + 1.0) / p.n(), 1.0 / p.alpha()) / p.cu();
}

Discriminant discriminant(const FluidParams& p, const EvalSettings& s) {
  const double n = p.n();
  const double a = p.alpha();
  const double c = p.c();
  if (!(n < 0.0)) throw DomainError("discriminant requires n < 0");
  if (!(c > 0.0 && c < 1.0)) throw DomainError("discriminant requires 0 < c < 1");
  const double lhs = std::pow(1.0 - (a + 1.0) / n, (n - 1.0 - a) / a);
  const double rhs = (1.0 - c) / (a * c);
  return {compare(lhs, rhs, s.eq_tol), lhs, rhs};
}

double first_root_bracketed(const FluidParams& p, const EvalSettings& s) {
  const double z0 = zeta_naught(p);
  auto fp = [&](double z) { return model::flux_prime(p, z); };
  const double lo = std::min(s.abs_tol, 0.5 * z0);
  if (fp(z0) > 0.0) {
    throw InconsistencyError("F'(zeta0) > 0 although two roots of F' were expected");
  }
  if (!(fp(lo) > 0.0)) {
    throw InconsistencyError("F' is not positive near zero");
  }
  return roots::find_root(fp, lo, z0, s);
}

namespace {

double second_root_bracketed(const FluidParams& p, const EvalSettings& s) {
  const double z0 = zeta_naught(p);
  auto fp = [&](double z) { return model::flux_prime(p, z); };
  double lo = z0;
  double hi = 2.0 * z0;
  int doublings = 0;
  while (!(fp(hi) > 0.0)) {
    if (++doublings > s.max_iter) {
      throw ConvergenceError("could not bracket the second root of F'");
    }
    lo = hi;
    hi *= 2.0;
  }
  return roots::find_root(fp, lo, hi, s);
}

// Cu^-1 ((n-1)/n)^((n-1)/a) (-1/n)^(1/a), the maximum of F for c = 1, n < 0.
double unit_c_peak_flux(const FluidParams& p) {
  const double n = p.n();
  const double a = p.alpha();
  return std::pow((n - 1.0) / n, (n - 1.0) / a) * std::pow(-1.0 / n, 1.0 / a) / p.cu();
}

// Closed-form Y0 for the degenerate-inflection case.
double interior_y0(const FluidParams& p, double b) {
  const double n = p.n();
  const double a = p.alpha();
  const double c = p.c();
  const double bracket = 1.0 - c + c * std::pow(1.0 - (a + 1.0) / n, (n - 1.0) / a);
  return 2.0 / b * bracket * std::pow(-(a + 1.0) / n, 1.0 / a) / p.cu();
}

void note_equality(RegimeReport& rep, std::string_view what, Regime above, Regime below) {
  rep.equality_detected = true;
  rep.notes.push_back(std::string(what) + " holds as equality within eq_tol; neighbouring regimes " +
                      std::string(to_string(above)) + " / " + std::string(to_string(below)));
}

// Decides the regime from "value vs bR/2" where value caps the admissible flux.
void settle_by_cap(RegimeReport& rep, double cap, double half_br, double eq_tol,
                   Regime below_outcome, std::string_view what) {
  rep.decision_margin = cap - half_br;
  switch (compare(cap, half_br, eq_tol)) {
    case Comparison::Above: rep.regime = Regime::ClassicalSmooth; break;
    case Comparison::Equal:
      rep.regime = Regime::ClassicalBoundarySingular;
      note_equality(rep, what, Regime::ClassicalSmooth, below_outcome);
      break;
    case Comparison::Below: rep.regime = below_outcome; break;
  }
}

void classify_unit_c(const FluidParams& p, const FlowParams& f, const EvalSettings& s,
                     RegimeReport& rep) {
  const double half_br = 0.5 * f.b() * f.r();
  const double n = p.n();
  if (n > 0.0) {
    rep.theorem = "c = 1, n > 0: flux strictly increasing and unbounded";
    rep.regime = Regime::ClassicalSmooth;
    return;
  }
  if (n == 0.0) {
    rep.theorem = "c = 1, n = 0: classical iff bR/2 <= 1/Cu";
    const double sup = 1.0 / p.cu();
    rep.critical.flux_supremum = sup;
    rep.critical.y_singular = 2.0 * sup / f.b();
    rep.critical.singular_kind = SingularKind::BranchEndY1;
    settle_by_cap(rep, sup, half_br, s.eq_tol, Regime::NoClassicalSolution, "bR/2 <= 1/Cu");
    return;
  }
  rep.theorem = "c = 1, n < 0: classical iff bR/2 <= F(zeta1)";
  const ZetaRoots zr = find_zeta_roots(p, s);
  rep.critical.zeta0 = zeta_naught(p);
  rep.critical.zeta1 = zr.zeta1;
  const double f1 = model::flux(p, *zr.zeta1);
  rep.critical.f_at_zeta1 = f1;
  rep.critical.y_singular = 2.0 * f1 / f.b();
  rep.critical.singular_kind = SingularKind::BranchEndY1;
  rep.existence_margin = f1 - half_br;
  settle_by_cap(rep, f1, half_br, s.eq_tol, Regime::NoClassicalSolution, "bR/2 <= F(zeta1)");
}

void classify_partial_c(const FluidParams& p, const FlowParams& f, const EvalSettings& s,
                        RegimeReport& rep) {
  const double half_br = 0.5 * f.b() * f.r();
  if (p.n() >= 0.0) {
    rep.theorem = "monotone flux: n >= 0";
    rep.regime = Regime::ClassicalSmooth;
    return;
  }
  const Discriminant d = discriminant(p, s);
  rep.discriminant = d.comparison;
  rep.discriminant_lhs = d.lhs;
  rep.discriminant_rhs = d.rhs;
  const double z0 = zeta_naught(p);
  rep.critical.zeta0 = z0;

  switch (d.comparison) {
    case Comparison::Below:
      rep.theorem = "monotone flux: min F' = F'(zeta0) > 0";
      rep.regime = Regime::ClassicalSmooth;
      return;
    case Comparison::Equal: {
      rep.theorem = "degenerate inflection F'(zeta0) = 0: compare F(zeta0) with bR/2";
      note_equality(rep, "min F' = 0", Regime::ClassicalSmooth, Regime::NoClassicalSolution);
      rep.equality_detected = true;
      rep.critical.y_singular = interior_y0(p, f.b());
      rep.critical.singular_kind = SingularKind::InteriorY0;
      settle_by_cap(rep, model::flux(p, z0), half_br, s.eq_tol,
                    Regime::GeneralizedInteriorSingular, "F(zeta0) >= bR/2");
      return;
    }
    case Comparison::Above: {
      rep.theorem = "non-monotone flux: classical iff bR/2 <= F(zeta1)";
      const ZetaRoots zr = find_zeta_roots(p, s);
      rep.critical.zeta1 = zr.zeta1;
      rep.critical.zeta2 = zr.zeta2;
      const double f1 = model::flux(p, *zr.zeta1);
      rep.critical.f_at_zeta1 = f1;
      rep.critical.y_singular = 2.0 * f1 / f.b();
      rep.critical.singular_kind = SingularKind::BranchEndY1;
      rep.existence_margin = f1 - half_br;
      settle_by_cap(rep, f1, half_br, s.eq_tol, Regime::NoClassicalSolution, "bR/2 <= F(zeta1)");
      return;
    }
  }
}

}  // namespace

ZetaRoots find_zeta_roots(const FluidParams& p, const EvalSettings& s) {
  s.validate();
  const double n = p.n();
  if (p.newtonian()) throw NoRootError("F' == 1 for a Newtonian fluid");
  if (p.c() == 1.0) {
    if (n < 0.0) {
      return {std::pow(-1.0 / n, 1.0 / p.alpha()) / p.cu(), std::nullopt, std::nullopt};
    }
    if (n == 0.0) return {std::nullopt, std::nullopt, 1.0 / p.cu()};
    throw NoRootError("F' > 0 for c = 1, n > 0");
  }
  if (n >= 0.0) throw NoRootError("F' > 0 for n >= 0");
  const Discriminant d = discriminant(p, s);
  if (d.comparison != Comparison::Above) {
    throw NoRootError("F' has no sign change unless the discriminant is Above");
  }
  return {first_root_bracketed(p, s), second_root_bracketed(p, s), std::nullopt};
}

RegimeReport classify(const FluidParams& p, const FlowParams& f, const EvalSettings& s) {
  s.validate();
  RegimeReport rep;
  rep.sign = f.sign();
  if (f.trivial()) {
    rep.regime = Regime::TrivialZeroGradient;
    rep.theorem = "zero pressure gradient: only the trivial solution";
    return rep;
  }
  if (p.newtonian()) {
    rep.regime = Regime::Newtonian;
    rep.theorem = "Newtonian reduction (c = 0, Cu = 0 or n = 1): U = b (Y^2 - R^2) / 4";
    return rep;
  }
  if (p.c() == 1.0) {
    classify_unit_c(p, f, s, rep);
  } else {
    classify_partial_c(p, f, s, rep);
  }
  if (f.sign() < 0) rep.notes.push_back("negative pressure gradient: solution is -U(Y, |b|)");
  return rep;
}

double singular_radius(const FluidParams& p, const FlowParams& f, SingularKind kind,
                       const EvalSettings& s) {
  if (f.trivial()) throw RegimeMismatchError("no singular radius for b = 0");
  if (p.newtonian()) throw RegimeMismatchError("no singular radius for a Newtonian fluid");
  if (kind == SingularKind::InteriorY0) {
    if (p.c() == 1.0 || p.n() >= 0.0 || discriminant(p, s).comparison != Comparison::Equal) {
      throw RegimeMismatchError("Y0 requires the degenerate-inflection case F'(zeta0) = 0");
    }
    return interior_y0(p, f.b());
  }
  if (p.c() == 1.0 && p.n() < 0.0) return 2.0 * unit_c_peak_flux(p) / f.b();
  ZetaRoots zr;
  try {
    zr = find_zeta_roots(p, s);
  } catch (const NoRootError& e) {
    throw RegimeMismatchError(std::string("Y1 requires a bounded flux branch: ") + e.what());
  } catch (const DomainError& e) {
    throw RegimeMismatchError(std::string("Y1 requires a bounded flux branch: ") + e.what());
  }
  if (zr.flux_supremum) return 2.0 * *zr.flux_supremum / f.b();
  return 2.0 * model::flux(p, *zr.zeta1) / f.b();
}

}  // namespace cypoise::regime
