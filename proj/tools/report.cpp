#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <utility>
#include <vector>

namespace cypoise::cli {

namespace {

using Json = nlohmann::ordered_json;

Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

// JSON has no infinity, so unbounded markers travel as the "inf" token.
Json second_derivative(const profile::SecondDerivative& v) {
  return v ? Json(*v) : Json("inf");
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

std::string singular_kind(const std::optional<regime::SingularKind>& k) {
  if (!k) return "";
  return *k == regime::SingularKind::InteriorY0 ? "Y0" : "Y1";
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ';';
    out += format_number(v[i]);
  }
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += "; ";
    out += v[i];
  }
  return out;
}

using Rows = std::vector<std::pair<std::string, std::string>>;

Rows report_rows(const FluidParams& p, const FlowParams& f, const regime::RegimeReport& rep) {
  const regime::CriticalPoints& cp = rep.critical;
  return {
      {"n", format_number(p.n())},
      {"alpha", format_number(p.alpha())},
      {"c", format_number(p.c())},
      {"cu", format_number(p.cu())},
      {"b", format_number(f.signed_b())},
      {"r", format_number(f.r())},
      {"regime", std::string(regime::to_string(rep.regime))},
      {"code", std::to_string(regime::regime_code(rep.regime))},
      {"theorem", rep.theorem},
      {"zeta0", format_optional(cp.zeta0)},
      {"zeta1", format_optional(cp.zeta1)},
      {"zeta2", format_optional(cp.zeta2)},
      {"f_at_zeta1", format_optional(cp.f_at_zeta1)},
      {"flux_supremum", format_optional(cp.flux_supremum)},
      {"y_singular", format_optional(cp.y_singular)},
      {"singular_kind", singular_kind(cp.singular_kind)},
      {"discriminant_lhs", format_optional(rep.discriminant_lhs)},
      {"discriminant_rhs", format_optional(rep.discriminant_rhs)},
      {"discriminant", rep.discriminant ? std::string(regime::to_string(*rep.discriminant)) : ""},
      {"existence_margin", format_optional(rep.existence_margin)},
      {"decision_margin", format_optional(rep.decision_margin)},
      {"equality_detected", bool_text(rep.equality_detected)},
      {"notes", join(rep.notes)},
  };
}

std::string rows_csv(const Rows& rows) {
  std::string out = "key,value\n";
  for (const auto& [k, v] : rows) out += k + "," + csv_field(v) + "\n";
  return out;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_optional(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

Json params_json(const FluidParams& p, const FlowParams& f) {
  Json j;
  j["n"] = p.n();
  j["alpha"] = p.alpha();
  j["c"] = p.c();
  j["cu"] = p.cu();
  j["b"] = f.signed_b();
  j["r"] = f.r();
  return j;
}

Json settings_json(const EvalSettings& s) {
  Json j;
  j["rel_tol"] = s.rel_tol;
  j["abs_tol"] = s.abs_tol;
  j["eq_tol"] = s.eq_tol;
  j["max_iter"] = s.max_iter;
  return j;
}

Json report_json(const FluidParams& p, const FlowParams& f, const regime::RegimeReport& rep,
                 const EvalSettings& s) {
  const regime::CriticalPoints& cp = rep.critical;
  Json j;
  j["params"] = params_json(p, f);
  j["regime"] = regime::to_string(rep.regime);
  j["theorem"] = rep.theorem;

  Json c;
  c["zeta0"] = opt(cp.zeta0);
  c["zeta1"] = opt(cp.zeta1);
  c["zeta2"] = opt(cp.zeta2);
  c["f_at_zeta1"] = opt(cp.f_at_zeta1);
  c["flux_supremum"] = opt(cp.flux_supremum);
  c["y_singular"] = opt(cp.y_singular);
  c["singular_kind"] = cp.singular_kind ? Json(singular_kind(cp.singular_kind)) : Json(nullptr);
  j["critical_points"] = c;

  Json m;
  m["discriminant_lhs"] = opt(rep.discriminant_lhs);
  m["discriminant_rhs"] = opt(rep.discriminant_rhs);
  m["discriminant"] = rep.discriminant ? Json(regime::to_string(*rep.discriminant)) : Json(nullptr);
  m["existence_margin"] = opt(rep.existence_margin);
  m["decision_margin"] = opt(rep.decision_margin);
  m["equality_detected"] = rep.equality_detected;
  j["margins"] = m;

  Json d;
  d["exit_code"] = regime::regime_code(rep.regime);
  d["sign"] = rep.sign;
  d["notes"] = rep.notes;
  d["settings"] = settings_json(s);
  j["diagnostics"] = d;
  return j;
}

std::string report_csv(const FluidParams& p, const FlowParams& f, const regime::RegimeReport& rep,
                       const EvalSettings& /*s*/) {
  return rows_csv(report_rows(p, f, rep));
}

std::string profile_csv(const FluidParams& p, const FlowParams& f, const regime::RegimeReport& rep,
                        const profile::VelocityProfile& prof, const EvalSettings& s) {
  std::ostringstream out;
  out << "# n=" << format_number(p.n()) << "\n"
      << "# alpha=" << format_number(p.alpha()) << "\n"
      << "# c=" << format_number(p.c()) << "\n"
      << "# cu=" << format_number(p.cu()) << "\n"
      << "# b=" << format_number(f.signed_b()) << "\n"
      << "# r=" << format_number(f.r()) << "\n"
      << "# regime=" << regime::to_string(rep.regime) << "\n"
      << "# theorem=" << rep.theorem << "\n"
      << "# rel_tol=" << format_number(s.rel_tol) << "\n"
      << "# abs_tol=" << format_number(s.abs_tol) << "\n"
      << "# eq_tol=" << format_number(s.eq_tol) << "\n"
      << "# max_residual=" << format_number(prof.max_residual) << "\n"
      << "# quadrature_error=" << format_number(prof.quadrature_error) << "\n"
      << "# y_end=" << format_number(prof.y_end) << "\n"
      << "# singular_points=" << join(prof.singular_points) << "\n"
      << "# undetermined_constant=" << bool_text(prof.undetermined_constant) << "\n"
      << "Y,U,U_Y,U_YY\n";
  for (std::size_t i = 0; i < prof.grid.size(); ++i) {
    out << format_number(prof.grid[i]) << ',' << format_number(prof.u[i]) << ','
        << format_number(prof.u_y[i]) << ','
        << (prof.u_yy[i] ? format_number(*prof.u_yy[i]) : std::string("inf")) << "\n";
  }
  return out.str();
}

Json profile_json(const FluidParams& p, const FlowParams& f, const regime::RegimeReport& rep,
                  const profile::VelocityProfile& prof, const EvalSettings& s) {
  Json j = report_json(p, f, rep, s);
  j["diagnostics"]["max_residual"] = prof.max_residual;
  j["diagnostics"]["quadrature_error"] = prof.quadrature_error;
  j["diagnostics"]["undetermined_constant"] = prof.undetermined_constant;
  Json data;
  data["y_end"] = prof.y_end;
  data["singular_points"] = prof.singular_points;
  data["Y"] = prof.grid;
  data["U"] = prof.u;
  data["U_Y"] = prof.u_y;
  Json uyy = Json::array();
  for (const auto& v : prof.u_yy) uyy.push_back(second_derivative(v));
  data["U_YY"] = uyy;
  j["profile"] = data;
  return j;
}

Json bounds_json(const FluidParams& p, const FlowParams& f, const unsteady::BoundReport& b,
                 const EvalSettings& s) {
  Json j;
  j["params"] = params_json(p, f);
  Json fb;
  fb["forward_backward"] = b.forward_backward.forward_backward;
  fb["eta0"] = opt(b.forward_backward.eta0);
  fb["eta1"] = opt(b.forward_backward.eta1);
  fb["eta2"] = opt(b.forward_backward.eta2);
  j["forward_backward"] = fb;
  if (b.k1) {
    Json k;
    k["m_value"] = b.k1->m_value;
    k["k1"] = b.k1->k1;
    k["iterations"] = b.k1->iterations;
    k["converged"] = b.k1->converged;
    k["fixed_point_residual"] = b.k1->fixed_point_residual;
    k["sequence"] = b.k1->sequence;
    j["k1"] = k;
  } else {
    j["k1"] = nullptr;
  }
  if (b.existence) {
    const unsteady::GlobalExistence& e = *b.existence;
    Json g;
    g["gradient_ok"] = e.gradient_ok;
    g["envelope_ok"] = e.envelope_ok;
    g["guaranteed"] = e.guaranteed;
    g["zeta1"] = opt(e.zeta1);
    g["steady_wall_gradient"] = opt(e.steady_wall_gradient);
    g["notes"] = e.notes;
    j["existence"] = g;
  } else {
    j["existence"] = nullptr;
  }
  Json d;
  d["settings"] = settings_json(s);
  j["diagnostics"] = d;
  return j;
}

std::string bounds_csv(const FluidParams& p, const FlowParams& f, const unsteady::BoundReport& b) {
  Rows rows{
      {"n", format_number(p.n())},
      {"alpha", format_number(p.alpha())},
      {"c", format_number(p.c())},
      {"cu", format_number(p.cu())},
      {"r", format_number(f.r())},
      {"forward_backward", bool_text(b.forward_backward.forward_backward)},
      {"eta0", format_optional(b.forward_backward.eta0)},
      {"eta1", format_optional(b.forward_backward.eta1)},
      {"eta2", format_optional(b.forward_backward.eta2)},
  };
  if (b.k1) {
    rows.push_back({"m_value", format_number(b.k1->m_value)});
    rows.push_back({"k1", format_number(b.k1->k1)});
    rows.push_back({"iterations", std::to_string(b.k1->iterations)});
    rows.push_back({"converged", bool_text(b.k1->converged)});
    rows.push_back({"fixed_point_residual", format_number(b.k1->fixed_point_residual)});
  }
  if (b.existence) {
    rows.push_back({"gradient_ok", bool_text(b.existence->gradient_ok)});
    rows.push_back({"envelope_ok", bool_text(b.existence->envelope_ok)});
    rows.push_back({"guaranteed", bool_text(b.existence->guaranteed)});
    rows.push_back({"steady_wall_gradient", format_optional(b.existence->steady_wall_gradient)});
    rows.push_back({"existence_notes", join(b.existence->notes)});
  }
  return rows_csv(rows);
}

}  // namespace cypoise::cli
