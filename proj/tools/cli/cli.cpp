#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "tstab/cone_explorer.hpp"
#include "tstab/errors.hpp"
#include "tstab/mt_functionals.hpp"
#include "tstab/report.hpp"
#include "tstab/suite.hpp"
#include "tstab/thresholds.hpp"

namespace tstab::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

// Thrown for malformed flag values that CLI11 itself accepts.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string variety;
  std::string divisor;
  std::string direction;
  std::string gamma_range;
  int steps = 11;
  std::string suite;
  std::uint64_t seed = 0;
  std::string lambdas = "1.6,1.8,2.0,2.2,2.4";
  std::string c_values = "1e-2,1e-3,1e-4,1e-5,1e-6";
  std::string klass = "1";
  int grid = 0;
  double smax = 0;
  std::optional<double> twist;
  std::string check;
  int criterion = 0;
  std::string format;
  std::string out;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Writes to a sibling temporary and renames, so readers never see a
// partial file.
void write_atomically(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    f << text;
    if (!f.flush()) throw std::runtime_error("cannot write '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty()) {
    out << text;
  } else {
    write_atomically(o.out, text);
  }
}

std::vector<double> parse_doubles(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      double x = std::stod(item, &used);
      if (used != item.size() || !std::isfinite(x)) throw std::invalid_argument(item);
      out.push_back(x);
    } catch (const std::logic_error&) {
      if (item.find('/') == std::string::npos) throw UsageError(std::string(flag) + ": bad number '" + item + "'");
      out.push_back(to_double(parse_rational(item)));
    }
  }
  if (out.empty()) throw UsageError(std::string(flag) + " needs at least one value");
  return out;
}

ToricRDivisor divisor_or_anticanonical(const VarietyPtr& x, const std::string& text) {
  return text.empty() ? anticanonical(x) : parse_divisor(x, text);
}

std::string format_or(const Options& o, const char* fallback, std::initializer_list<const char*> allowed) {
  std::string f = o.format.empty() ? fallback : o.format;
  if (std::find(allowed.begin(), allowed.end(), f) == allowed.end()) {
    throw UsageError("--format " + f + " is not supported here");
  }
  return f;
}

int cmd_compute(const Options& o, std::ostream& out) {
  VarietyPtr x = load_variety(o.variety);
  ThresholdReport r = compute_report(divisor_or_anticanonical(x, o.divisor));
  if (format_or(o, "json", {"json", "csv"}) == "json") {
    emit(o, out, to_json(r));
  } else {
    emit(o, out, report_csv_header() + "\n" + to_csv_row(r) + "\n");
  }
  return kPass;
}

ordered_json exact_or_null(const std::optional<Rational>& q) { return q ? ordered_json(to_pq(*q)) : ordered_json(); }

std::string sweep_json(const std::vector<SweepRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json row;
    row["gamma"] = to_pq(r.gamma);
    row["delta"] = exact_or_null(r.delta);
    if (r.delta_witness) {
      ordered_json w = ordered_json::array();
      for (const auto& c : *r.delta_witness) w.push_back(c.get_num().get_si());
      row["delta_witness"] = w;
    } else {
      row["delta_witness"] = nullptr;
    }
    row["alpha"] = exact_or_null(r.alpha);
    row["s"] = exact_or_null(r.s);
    row["beta"] = exact_or_null(r.beta);
    row["vol"] = exact_or_null(r.vol);
    row["flags"] = r.flags;
    row["eps"] = exact_or_null(r.eps);
    arr.push_back(std::move(row));
  }
  return arr.dump(2) + "\n";
}

int cmd_sweep(const Options& o, std::ostream& out) {
  VarietyPtr x = load_variety(o.variety);
  const auto colon = o.gamma_range.find(':');
  if (colon == std::string::npos) throw UsageError("--gamma-range must look like a:b");
  SweepSpec spec{divisor_or_anticanonical(x, o.divisor), parse_divisor(x, o.direction),
                 parse_rational(o.gamma_range.substr(0, colon)), parse_rational(o.gamma_range.substr(colon + 1)),
                 o.steps};
  if (spec.steps < 2) throw UsageError("--steps must be at least 2");
  if (spec.gamma_min > spec.gamma_max) throw UsageError("--gamma-range needs a <= b");
  auto rows = continuity_sweep(spec);
  if (format_or(o, "csv", {"csv", "json"}) == "json") {
    emit(o, out, sweep_json(rows));
    return kPass;
  }
  emit(o, out, sweep_csv(rows));
  if (!o.out.empty()) {
    fs::path exact = o.out;
    exact.replace_extension(".exact.csv");
    write_atomically(exact, sweep_exact_csv(rows));
  }
  return kPass;
}

int cmd_check(const Options& o, std::ostream& out) {
  const auto& names = property_suite_names();
  if (std::find(names.begin(), names.end(), o.suite) == names.end()) {
    throw UsageError("unknown suite '" + o.suite + "'");
  }
  std::vector<VarietyPtr> vars;
  if (!o.variety.empty()) vars.push_back(load_variety(o.variety));
  PropertyOutcome r = run_property_suite(o.suite, o.seed, vars);
  std::ostringstream os;
  os << o.suite << ": " << (r.passed ? "pass" : "FAIL") << " (" << r.cases << " cases, seed " << o.seed << ")\n";
  if (!r.passed) os << "counterexample: " << r.counterexample << "\n";
  emit(o, out, os.str());
  return r.passed ? kPass : kPropertyFailure;
}

mt::FunctionalContext make_context(const Options& o, int n, const std::vector<double>& p) {
  const int nodes = o.grid > 0 ? o.grid : (n == 1 ? 2049 : 96);
  const double smax = o.smax > 0 ? o.smax : (n == 1 ? 40.0 : 16.0);
  mt::LogGrid grid = mt::LogGrid::create(n, p, nodes, smax);
  if (o.twist) return mt::FunctionalContext(grid, *o.twist);
  // Without an explicit twist use the canonical one when the class admits it.
  const double c = (2 - p[0]) / p[0];
  const bool admits = c >= 0 && std::all_of(p.begin(), p.end(), [c](double pi) { return std::abs(c * pi - (2 - pi)) <= 1e-12; });
  if (admits) return mt::FunctionalContext(grid, c);
  return mt::FunctionalContext::with_background(grid, mt::background_form(grid));
}

// Property samples over 20 seeded random potentials.
int mt_check(const Options& o, const mt::FunctionalContext& ctx, std::ostream& out) {
  int cases = 0;
  std::string failure;
  auto expect = [&](bool ok, const std::string& what) {
    ++cases;
    if (!ok && failure.empty()) failure = what;
  };
  for (std::uint64_t k = 0; k < 20; ++k) {
    const std::string tag = "sample " + std::to_string(k) + " (seed " + std::to_string(o.seed) + ")";
    mt::ToricPotential u = mt::random_potential(ctx.grid(), o.seed * 1000 + k);
    if (o.check == "ding") {
      for (double lambda : {0.25, 0.5, 0.75}) {
        auto r = mt::ding_inequality_check(ctx, u, lambda);
        expect(r.holds, tag + ", lambda " + fmt(lambda) + ": J " + fmt(r.j) + ", J(lambda u) " + fmt(r.j_lambda) +
                            ", bounds [" + fmt(r.lower) + ", " + fmt(r.upper) + "]");
      }
    } else if (o.check == "sandwich") {
      auto r = mt::ij_sandwich_check(ctx, u);
      expect(r.holds, tag + ": I " + fmt(r.i) + ", J " + fmt(r.j));
    } else if (o.check == "cocycle") {
      mt::ToricPotential v = mt::random_potential(ctx.grid(), o.seed * 1000 + 500 + k);
      const double res = mt::cocycle_check(ctx, u, v);
      expect(res < 1e-6 * std::max(1.0, std::abs(mt::functional_J(ctx, u))), tag + ": residual " + fmt(res));
    } else if (o.check == "comparison") {
      const double eps = 0.05;
      for (double r : {-eps, 0.0, eps}) {
        auto c = mt::j_comparison_check(ctx, u, r, eps);
        expect(c.holds, tag + ", r " + fmt(r) + ": J " + fmt(c.j) + ", perturbed " + fmt(c.j_perturbed));
      }
    } else if (o.check == "mabuchi") {
      const double d = mt::functional_D(ctx, u), m = mt::functional_M(ctx, u);
      expect(m >= d - 1e-12 * std::max(1.0, std::abs(d)), tag + ": M " + fmt(m) + " < D " + fmt(d));
    } else {
      throw UsageError("unknown --check '" + o.check + "'");
    }
  }
  std::ostringstream os;
  os << o.check << ": " << (failure.empty() ? "pass" : "FAIL") << " (" << cases << " checks, seed " << o.seed << ")\n";
  if (!failure.empty()) os << "counterexample: " << failure << "\n";
  emit(o, out, os.str());
  return failure.empty() ? kPass : kPropertyFailure;
}

int cmd_mt_probe(const Options& o, std::ostream& out) {
  const std::vector<double> p = parse_doubles(o.klass, "--class");
  const int n = static_cast<int>(p.size());
  mt::FunctionalContext ctx = make_context(o, n, p);
  if (!o.check.empty()) return mt_check(o, ctx, out);

  auto rows = mt::concentration_probe(ctx, parse_doubles(o.lambdas, "--lambdas"), parse_doubles(o.c_values, "--c-values"));
  if (format_or(o, "csv", {"csv", "json"}) == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& row : rows) {
      ordered_json samples = ordered_json::array();
      for (const auto& s : row.samples) {
        samples.push_back({{"c", s.c}, {"quotient", s.quotient}, {"J", s.j}, {"I", s.i}, {"entropy", s.entropy}});
      }
      arr.push_back({{"lambda", row.lambda}, {"slope_fit", row.slope}, {"samples", samples}});
    }
    emit(o, out, arr.dump(2) + "\n");
    return kPass;
  }
  std::string csv = "lambda,c,quotient,J,I,entropy,slope_fit\n";
  for (const auto& row : rows) {
    for (const auto& s : row.samples) {
      csv += fmt(row.lambda) + "," + fmt(s.c) + "," + fmt(s.quotient) + "," + fmt(s.j) + "," + fmt(s.i) + "," +
             fmt(s.entropy) + "," + fmt(row.slope) + "\n";
    }
  }
  emit(o, out, csv);
  return kPass;
}

int cmd_suite(const Options& o, std::ostream& out) {
  std::ostringstream os;
  bool all = true;
  auto line = [&](const CriterionResult& r) {
    all = all && r.passed;
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2fs", r.seconds);
    os << (r.passed ? "[PASS] " : "[FAIL] ") << "AC" << r.id << " " << r.name << " (" << secs << "): " << r.detail
       << "\n";
  };
  if (o.criterion != 0) {
    if (o.criterion < 1 || o.criterion > kAcceptanceCriteria) throw UsageError("--criterion out of range");
    line(run_criterion(o.criterion, o.seed));
  } else {
    run_acceptance(o.seed, line);
  }
  emit(o, out, os.str());
  return all ? kPass : kPropertyFailure;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::InvalidFan:
    case ErrorKind::InvalidVariety:
      return kParseFailure;
    default:
      return kPreconditionFailure;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stability thresholds of divisors on smooth projective toric varieties", "tstab"};
  app.require_subcommand(1);
  Options o;

  auto add_variety = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--variety", o.variety, "builtin name (P1, P2, P3, P1xP1, dP1) or variety file");
    if (required) opt->required();
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "output path (default: stdout)");
    sub->add_option("--format", o.format, "csv or json");
  };

  auto* compute = app.add_subcommand("compute", "thresholds report for one divisor");
  add_variety(compute, true);
  compute->add_option("--divisor", o.divisor, "coefficients p/q in ray order (default: -K)");
  add_out(compute);

  auto* sweep = app.add_subcommand("sweep", "thresholds along L + gamma S");
  add_variety(sweep, true);
  sweep->add_option("--divisor", o.divisor, "base divisor (default: -K)");
  sweep->add_option("--direction", o.direction, "direction S")->required();
  sweep->add_option("--gamma-range", o.gamma_range, "a:b")->required();
  sweep->add_option("--steps", o.steps, "number of rows")->capture_default_str();
  add_out(sweep);

  auto* check = app.add_subcommand("check", "seeded exact property suite");
  check->add_option("--suite", o.suite, "bishop, sandwich, comparison or scaling")->required();
  check->add_option("--seed", o.seed)->capture_default_str();
  add_variety(check, false);
  check->add_option("--out", o.out, "output path (default: stdout)");

  auto* probe = app.add_subcommand("mt-probe", "Moser-Trudinger probes on (P^1)^n");
  probe->add_option("--class", o.klass, "class p, one entry per factor")->capture_default_str();
  probe->add_option("--lambdas", o.lambdas)->capture_default_str();
  probe->add_option("--c-values", o.c_values, "concentration parameters")->capture_default_str();
  probe->add_option("--grid", o.grid, "nodes per axis (default 2049 for n = 1, 96 for n = 2)");
  probe->add_option("--smax", o.smax, "box half-width (default 40 for n = 1, 16 for n = 2)");
  probe->add_option("--twist", o.twist, "twist scale c with alpha = c omega0");
  probe->add_option("--check", o.check, "ding, sandwich, cocycle, comparison or mabuchi instead of the probe");
  probe->add_option("--seed", o.seed)->capture_default_str();
  add_out(probe);

  auto* suite = app.add_subcommand("suite", "acceptance criteria, one line each");
  suite->add_option("--seed", o.seed)->capture_default_str();
  suite->add_option("--criterion", o.criterion, "run a single criterion");
  suite->add_option("--out", o.out, "output path (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "tstab: " << e.what() << "\n";
    return kParseFailure;
  }

  try {
    if (compute->parsed()) return cmd_compute(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out);
    if (check->parsed()) return cmd_check(o, out);
    if (probe->parsed()) return cmd_mt_probe(o, out);
    return cmd_suite(o, out);
  } catch (const Error& e) {
    err << "tstab: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const UsageError& e) {
    err << "tstab: " << e.what() << "\n";
    return kParseFailure;
  } catch (const std::exception& e) {
    err << "tstab: " << e.what() << "\n";
    return kPreconditionFailure;
  }
}

}  // namespace tstab::cli
