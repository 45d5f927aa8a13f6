#include "cypoise/unsteady.hpp"

#include <algorithm>
#include <cmath>

#include "cypoise/inverse.hpp"
#include "cypoise/model.hpp"
#include "cypoise/profile.hpp"
#include "cypoise/regime.hpp"
#include "cypoise/roots.hpp"

namespace cypoise::unsteady {

void UnsteadyData::validate() const {
  for (double v : {sup_f, sup_psi_prime, sup_psi_weighted}) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("suprema must be finite and >= 0");
  }
  if (!(beta > 0.0)) throw DomainError("beta must be > 0");
}

UnsteadyData UnsteadyData::from_samples(std::vector<PsiSample> samples, double r, double sup_f,
                                        double beta) {
  if (samples.size() < 2) throw DomainError("need at least two Psi samples");
  std::sort(samples.begin(), samples.end(),
            [](const PsiSample& a, const PsiSample& b) { return a.y < b.y; });
  UnsteadyData d;
  d.sup_f = sup_f;
  d.beta = beta;
  const std::size_t n = samples.size();
  for (std::size_t i = 0; i < n; ++i) {
    const PsiSample& s = samples[i];
    if (!(s.y >= 0.0 && s.y <= r) || !std::isfinite(s.psi)) {
      throw DomainError("Psi sample outside [0, R] or not finite");
    }
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 == n ? n - 1 : i + 1;
    const double dy = samples[hi].y - samples[lo].y;
    if (dy > 0.0) {
      d.sup_psi_prime =
          std::max(d.sup_psi_prime, std::abs((samples[hi].psi - samples[lo].psi) / dy));
    }
    if (s.y < r) {
      d.sup_psi_weighted = std::max(d.sup_psi_weighted, 2.0 * std::abs(s.psi) / (r * r - s.y * s.y));
    }
  }
  d.psi_samples = std::move(samples);
  return d;
}

double m_value(const UnsteadyData& d, double r) {
  return std::max({d.sup_f, d.sup_psi_prime / r, d.sup_psi_weighted});
}

ForwardBackward forward_backward_check(const FluidParams& p, const EvalSettings& s) {
  s.validate();
  ForwardBackward out;
  if (p.newtonian() || !(p.n() < 0.0)) return out;
  const double c = p.c();
  if (c < 1.0) {
    const regime::Discriminant d = regime::discriminant(p, s);
    if (regime::compare(p.alpha() * d.lhs, (1.0 - c) / c, s.eq_tol) != regime::Comparison::Above) {
      return out;
    }
  }
  out.forward_backward = true;
  const double eta0 = regime::zeta_naught(p);
  out.eta0 = eta0;
  auto h = [&](double eta) { return model::h_function(p, eta); };
  if (!(h(eta0) < 0.0)) throw InconsistencyError("h(eta0) >= 0 in the forward-backward case");
  out.eta1 = roots::find_root(h, std::min(s.abs_tol, 0.5 * eta0), eta0, s);
  if (c < 1.0) {
    double lo = eta0;
    double hi = 2.0 * eta0;
    int doublings = 0;
    while (!(h(hi) > 0.0)) {
      if (++doublings > s.max_iter) throw ConvergenceError("could not bracket eta2");
      lo = hi;
      hi *= 2.0;
    }
    out.eta2 = roots::find_root(h, lo, hi, s);
  }
  return out;
}

K1Bound k1_bound(const FluidParams& p, double r, double m, const EvalSettings& s) {
  s.validate();
  const double c = p.c();
  if (!(c > 0.0 && c < 1.0)) throw DomainError("K1 requires 0 < c < 1");
  if (!(p.n() < 0.0)) throw DomainError("K1 requires n < 0");
  if (!(m >= 0.0) || !std::isfinite(m)) throw DomainError("M must be finite and >= 0");
  if (!(r > 0.0)) throw DomainError("R must be > 0");

  const double rm = r * m;
  const double a = p.alpha();
  const double e = (p.n() - 1.0) / a;
  auto step = [&](double cm) {
    return rm / (1.0 - c + c * std::pow(1.0 + std::pow(p.cu() * cm, a), e));
  };

  K1Bound out;
  out.m_value = m;
  double prev = rm / (1.0 - c);
  out.sequence.push_back(prev);
  for (int it = 1; it <= s.max_iter; ++it) {
    const double next = step(prev);
    out.sequence.push_back(next);
    out.iterations = it;
    const bool done = std::abs(next - prev) <= std::max(s.abs_tol, s.rel_tol * next);
    prev = next;
    if (done) {
      out.converged = true;
      break;
    }
  }
  out.k1 = step(prev);
  out.fixed_point_residual = std::abs(out.k1 - step(out.k1));
  return out;
}

GlobalExistence global_existence_check(const FluidParams& p, double r, const UnsteadyData& d,
                                       const EvalSettings& s) {
  s.validate();
  d.validate();
  if (!(r > 0.0)) throw DomainError("R must be > 0");
  if (!(p.c() > 0.0)) throw DomainError("global existence check requires 0 < c <= 1");
  if (!(p.n() < 0.0)) throw DomainError("global existence check requires n < 0");

  GlobalExistence out;
  out.notes.push_back("envelope read as |Psi(Y)| <= -U(Y) since the steady U is <= 0");
  if (p.c() < 1.0 && regime::discriminant(p, s).comparison != regime::Comparison::Above) {
    out.notes.push_back("F' has no positive root: the bound |W_Y| <= zeta1 does not apply");
    return out;
  }
  const double zeta1 = *regime::find_zeta_roots(p, s).zeta1;
  out.zeta1 = zeta1;

  const inverse::InverseBranch br = inverse::admissible_branch(p, s);
  const double x = 0.5 * r * d.sup_f;
  if (x > br.upper_flux && !inverse::at_branch_end(br, x, s)) {
    out.notes.push_back("R sup|f| / 2 exceeds F(zeta1): no steady classical solution to compare with");
    return out;
  }
  const double wall = inverse::invert_flux(p, br, x, s);
  out.steady_wall_gradient = wall;
  out.gradient_ok = std::max(wall, d.sup_psi_prime) < zeta1;

  if (d.psi_samples.empty()) {
    out.notes.push_back("no Psi samples supplied: envelope not checked");
  } else {
    std::vector<double> ys;
    for (const PsiSample& ps : d.psi_samples) ys.push_back(ps.y);
    std::sort(ys.begin(), ys.end());
    std::vector<double> neg_u(ys.size(), 0.0);
    if (d.sup_f > 0.0) {
      const profile::VelocityProfile prof =
          profile::velocity_profile(p, FlowParams(d.sup_f, r), ys, profile::QuadratureSettings{}, s);
      for (std::size_t i = 0; i < ys.size(); ++i) {
        // nearest grid point; sample radii are kept unless they merge with Y0
        auto it = std::lower_bound(prof.grid.begin(), prof.grid.end(), ys[i]);
        if (it == prof.grid.end() ||
            (it != prof.grid.begin() && std::abs(*(it - 1) - ys[i]) < std::abs(*it - ys[i]))) {
          --it;
        }
        neg_u[i] = -prof.u[static_cast<std::size_t>(it - prof.grid.begin())];
      }
    }
    out.envelope_ok = true;
    for (const PsiSample& ps : d.psi_samples) {
      const auto idx = std::lower_bound(ys.begin(), ys.end(), ps.y) - ys.begin();
      if (std::abs(ps.psi) > neg_u[static_cast<std::size_t>(idx)]) {
        out.envelope_ok = false;
        out.notes.push_back("envelope violated at Y = " + std::to_string(ps.y));
        break;
      }
    }
    out.notes.push_back("envelope checked pointwise on the supplied samples only");
  }
  out.guaranteed = out.gradient_ok && out.envelope_ok;
  return out;
}

}  // namespace cypoise::unsteady
