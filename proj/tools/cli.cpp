#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "cypoise/profile.hpp"
#include "cypoise/regime.hpp"
#include "cypoise/unsteady.hpp"
#include "report.hpp"
#include "selftest.hpp"

namespace cypoise::cli {

namespace {

using Json = nlohmann::ordered_json;

/// Raised for bad user input; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::optional<double> n, alpha, c, cu;
  double b = 1.0;
  double r = 1.0;
  int grid = 101;
  std::optional<double> rel_tol, abs_tol, eq_tol;
  std::string format;
  std::string out_path;
  bool partial = false;
  std::optional<std::string> sweep_n, sweep_alpha, sweep_c, sweep_cu, sweep_b, sweep_r;
  std::optional<double> m, sup_f, sup_psi_prime;
  std::string psi_file;
  int threads = 0;
};

EvalSettings settings_from(const Options& o) {
  EvalSettings s;
  if (o.rel_tol) s.rel_tol = *o.rel_tol;
  if (o.abs_tol) s.abs_tol = *o.abs_tol;
  if (o.eq_tol) s.eq_tol = *o.eq_tol;
  s.validate();
  return s;
}

double need(const std::optional<double>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing required parameter --") + flag);
  return *v;
}

FluidParams fluid_from(const Options& o) {
  return FluidParams(need(o.n, "n"), need(o.alpha, "alpha"), need(o.c, "c"), need(o.cu, "cu"));
}

std::string format_or(const Options& o, const std::string& fallback) {
  const std::string f = o.format.empty() ? fallback : o.format;
  if (f != "json" && f != "csv") throw UsageError("--format must be json or csv");
  return f;
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out_path, std::ios::binary);
  if (!file) throw UsageError("cannot open output file " + o.out_path);
  file << text;
  if (!file) throw UsageError("failed writing " + o.out_path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("malformed number '" + text + "' in " + what);
  }
  if (used != text.size()) throw UsageError("malformed number '" + text + "' in " + what);
  return v;
}

/// MIN:MAX:STEPS (inclusive, evenly spaced) or a comma-separated list.
std::vector<double> parse_range(const std::string& range, const std::string& what) {
  std::vector<std::string> parts;
  const char sep = range.find(':') != std::string::npos ? ':' : ',';
  std::stringstream ss(range);
  for (std::string item; std::getline(ss, item, sep);) parts.push_back(item);
  if (!range.empty() && range.back() == sep) parts.emplace_back();

  std::vector<double> values;
  if (sep == ':') {
    if (parts.size() != 3) throw UsageError(what + " must be MIN:MAX:STEPS");
    const double lo = parse_double(parts[0], what);
    const double hi = parse_double(parts[1], what);
    const double steps = parse_double(parts[2], what);
    if (!(steps >= 1.0) || steps != std::floor(steps) || steps > 1e6) {
      throw UsageError(what + ": STEPS must be a positive integer");
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw UsageError(what + ": bounds must be finite");
    const int k = static_cast<int>(steps);
    for (int i = 0; i < k; ++i) values.push_back(k == 1 ? lo : lo + (hi - lo) * i / (k - 1));
  } else {
    for (const std::string& item : parts) values.push_back(parse_double(item, what));
  }
  if (values.empty()) throw UsageError(what + " is empty");
  return values;
}

int cmd_classify(const Options& o, std::ostream& out) {
  const EvalSettings s = settings_from(o);
  const FluidParams p = fluid_from(o);
  const FlowParams f(o.b, o.r);
  const regime::RegimeReport rep = regime::classify(p, f, s);
  const std::string fmt = format_or(o, "json");
  emit(o, out, fmt == "json" ? dump(report_json(p, f, rep, s)) : report_csv(p, f, rep, s));
  return regime::regime_code(rep.regime);
}

int cmd_profile(const Options& o, std::ostream& out, std::ostream& err) {
  const EvalSettings s = settings_from(o);
  const FluidParams p = fluid_from(o);
  const FlowParams f(o.b, o.r);
  profile::QuadratureSettings q;
  q.grid_size = o.grid;
  q.validate();
  const regime::RegimeReport rep = regime::classify(p, f, s);
  const int code = regime::regime_code(rep.regime);
  if (rep.regime == regime::Regime::NoClassicalSolution && !o.partial) {
    err << "no classical solution on [0, R]";
    if (rep.critical.y_singular) err << " (solution ends at Y1 = " << format_number(*rep.critical.y_singular) << ")";
    err << "; pass --partial for the profile on [0, Y1]\n";
    return code;
  }
  const profile::VelocityProfile prof = rep.regime == regime::Regime::NoClassicalSolution
                                            ? profile::partial_profile(p, f, q, s)
                                            : profile::velocity_profile(p, f, q, s);
  const std::string fmt = format_or(o, "csv");
  emit(o, out, fmt == "csv" ? profile_csv(p, f, rep, prof, s) : dump(profile_json(p, f, rep, prof, s)));
  return code;
}

struct SweepPoint {
  double n, alpha, c, cu, b, r;
};

struct SweepRow {
  std::string csv;
  Json json;
};

SweepRow sweep_row(const SweepPoint& pt, const EvalSettings& s) {
  const FluidParams p(pt.n, pt.alpha, pt.c, pt.cu);
  const FlowParams f(pt.b, pt.r);
  SweepRow row;
  try {
    const regime::RegimeReport rep = regime::classify(p, f, s);
    row.json = report_json(p, f, rep, s);
    row.csv = format_number(pt.n) + "," + format_number(pt.alpha) + "," + format_number(pt.c) + "," +
              format_number(pt.cu) + "," + format_number(pt.b) + "," + format_number(pt.r) + "," +
              std::string(regime::to_string(rep.regime)) + "," +
              std::to_string(regime::regime_code(rep.regime)) + "," +
              format_optional(rep.critical.zeta1) + "," + format_optional(rep.critical.f_at_zeta1) +
              "," + format_optional(rep.existence_margin) + ",";
  } catch (const std::exception& e) {
    // numerical failure at one grid point does not abort the map
    row.json = Json{{"params", params_json(p, f)}, {"error", e.what()}};
    row.csv = format_number(pt.n) + "," + format_number(pt.alpha) + "," + format_number(pt.c) + "," +
              format_number(pt.cu) + "," + format_number(pt.b) + "," + format_number(pt.r) +
              ",Error,,,,," + csv_field(e.what());
  }
  return row;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const EvalSettings s = settings_from(o);
  const auto axis = [&](const std::optional<std::string>& range, const std::optional<double>& fixed,
                        double fallback, const char* name, bool& any) -> std::vector<double> {
    if (range) {
      any = true;
      return parse_range(*range, std::string("--sweep-") + name);
    }
    if (fixed) return {*fixed};
    if (std::isnan(fallback)) throw UsageError(std::string("missing --") + name + " or --sweep-" + name);
    return {fallback};
  };
  bool any = false;
  const auto ns = axis(o.sweep_n, o.n, NAN, "n", any);
  const auto alphas = axis(o.sweep_alpha, o.alpha, NAN, "alpha", any);
  const auto cs = axis(o.sweep_c, o.c, NAN, "c", any);
  const auto cus = axis(o.sweep_cu, o.cu, NAN, "cu", any);
  const auto bs = axis(o.sweep_b, std::nullopt, o.b, "b", any);
  const auto rs = axis(o.sweep_r, std::nullopt, o.r, "r", any);
  if (!any) throw UsageError("sweep needs at least one --sweep-<param> range");

  // lexicographic order, last parameter fastest
  std::vector<SweepPoint> points;
  for (double n : ns)
    for (double a : alphas)
      for (double c : cs)
        for (double cu : cus)
          for (double b : bs)
            for (double r : rs) {
              FluidParams(n, a, c, cu);  // invalid grid values are a usage error
              FlowParams(b, r);
              points.push_back({n, a, c, cu, b, r});
            }

  std::vector<SweepRow> rows(points.size());
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers =
      std::min<std::size_t>(o.threads > 0 ? static_cast<std::size_t>(o.threads) : hw, points.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < points.size();) rows[i] = sweep_row(points[i], s);
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  const std::string fmt = format_or(o, "csv");
  if (fmt == "json") {
    Json arr = Json::array();
    for (SweepRow& row : rows) arr.push_back(std::move(row.json));
    emit(o, out, dump(arr));
  } else {
    std::string text = "n,alpha,c,cu,b,r,regime,code,zeta1,f_at_zeta1,existence_margin,error\n";
    for (const SweepRow& row : rows) text += row.csv + "\n";
    emit(o, out, text);
  }
  return kExitOk;
}

std::vector<unsteady::PsiSample> read_psi_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open psi file " + path);
  std::vector<unsteady::PsiSample> samples;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::replace(line.begin(), line.end(), ',', ' ');
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    unsteady::PsiSample sample{};
    std::string extra;
    if (!(fields >> sample.y >> sample.psi) || (fields >> extra)) {
      // a non-numeric first line is taken as a column header
      if (samples.empty() && lineno == 1) continue;
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected 'Y PSI'");
    }
    samples.push_back(sample);
  }
  return samples;
}

int cmd_bounds(const Options& o, std::ostream& out) {
  const EvalSettings s = settings_from(o);
  const FluidParams p = fluid_from(o);
  if (!(o.r > 0.0)) throw UsageError("--r must be > 0");

  unsteady::UnsteadyData data;
  const bool have_data = o.sup_f || o.sup_psi_prime || !o.psi_file.empty();
  if (!o.psi_file.empty()) {
    data = unsteady::UnsteadyData::from_samples(read_psi_file(o.psi_file), o.r, o.sup_f.value_or(0.0));
  }
  if (o.sup_f) data.sup_f = *o.sup_f;
  if (o.sup_psi_prime) data.sup_psi_prime = *o.sup_psi_prime;
  data.validate();

  unsteady::BoundReport rep;
  rep.forward_backward = unsteady::forward_backward_check(p, s);
  if (o.m || have_data) {
    if (p.c() == 1.0) throw UsageError("K1 needs 0 < c < 1 (C0 = R M / (1 - c) is undefined at c = 1)");
    rep.k1 = unsteady::k1_bound(p, o.r, o.m ? *o.m : unsteady::m_value(data, o.r), s);
  }
  if (have_data && p.c() > 0.0 && p.n() < 0.0) {
    rep.existence = unsteady::global_existence_check(p, o.r, data, s);
  }
  const FlowParams f(data.sup_f, o.r);
  const std::string fmt = format_or(o, "json");
  emit(o, out, fmt == "json" ? dump(bounds_json(p, f, rep, s)) : bounds_csv(p, f, rep));
  return kExitOk;
}

int cmd_selftest(const Options& o, std::ostream& out) {
  const EvalSettings s = settings_from(o);
  const std::vector<CheckResult> results = run_selftest(s);
  std::ostringstream text;
  int failed = 0;
  for (const CheckResult& r : results) {
    text << (r.passed ? "PASS  " : "FAIL  ") << r.name << ": " << r.detail << "\n";
    failed += r.passed ? 0 : 1;
  }
  text << results.size() - static_cast<std::size_t>(failed) << "/" << results.size()
       << " checks passed\n";
  emit(o, out, text.str());
  return failed ? kExitSelftestFailed : kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Steady and unsteady Carreau-Yasuda pipe flow: regimes, profiles and bounds",
               "cypoise"};
  app.fallthrough();
  app.require_subcommand(1, 1);
  app.set_config("--config", "", "flat key = value file; command-line flags take precedence");

  Options o;
  app.add_option("--n", o.n, "power-law index n");
  app.add_option("--alpha", o.alpha, "Yasuda exponent alpha > 0");
  app.add_option("--c", o.c, "viscosity ratio c = 1 - mu_inf/mu_0 in [0, 1]");
  app.add_option("--cu", o.cu, "Carreau number Cu >= 0");
  app.add_option("--b", o.b, "pressure gradient b")->capture_default_str();
  app.add_option("--r", o.r, "pipe radius R > 0")->capture_default_str();
  app.add_option("--grid", o.grid, "profile grid size")->capture_default_str();
  app.add_option("--rel-tol", o.rel_tol, "relative solver tolerance");
  app.add_option("--abs-tol", o.abs_tol, "absolute solver tolerance");
  app.add_option("--eq-tol", o.eq_tol, "relative tolerance for equality branches");
  app.add_option("--format", o.format, "json or csv");
  app.add_option("--out", o.out_path, "write the report to this file");
  app.add_flag("--partial", o.partial, "profile on [0, Y1] when no classical solution exists");
  app.add_option("--sweep-n", o.sweep_n, "MIN:MAX:STEPS or a comma list");
  app.add_option("--sweep-alpha", o.sweep_alpha, "MIN:MAX:STEPS or a comma list");
  app.add_option("--sweep-c", o.sweep_c, "MIN:MAX:STEPS or a comma list");
  app.add_option("--sweep-cu", o.sweep_cu, "MIN:MAX:STEPS or a comma list");
  app.add_option("--sweep-b", o.sweep_b, "MIN:MAX:STEPS or a comma list");
  app.add_option("--sweep-r", o.sweep_r, "MIN:MAX:STEPS or a comma list");
  app.add_option("--threads", o.threads, "sweep worker threads (0 = hardware)");
  app.add_option("--m", o.m, "M value for the K1 bound");
  app.add_option("--sup-f", o.sup_f, "sup |f(T)|");
  app.add_option("--sup-psi-prime", o.sup_psi_prime, "sup |Psi'(Y)|");
  app.add_option("--psi-file", o.psi_file, "sampled initial profile: Y PSI per line");

  CLI::App* classify = app.add_subcommand("classify", "classify the steady regime");
  CLI::App* prof = app.add_subcommand("profile", "compute the velocity profile");
  CLI::App* sweep = app.add_subcommand("sweep", "regime map over parameter ranges");
  CLI::App* bounds = app.add_subcommand("bounds", "unsteady K1 bound and existence checks");
  CLI::App* selftest = app.add_subcommand("selftest", "golden examples and invariant checks");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }

  try {
    if (o.grid < 2) throw UsageError("--grid must be >= 2");
    if (*classify) return cmd_classify(o, out);
    if (*prof) return cmd_profile(o, out, err);
    if (*sweep) return cmd_sweep(o, out);
    if (*bounds) return cmd_bounds(o, out);
    if (*selftest) return cmd_selftest(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}

}  // namespace cypoise::cli
