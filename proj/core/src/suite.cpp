#include "tstab/suite.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tstab/cone_explorer.hpp"
#include "tstab/errors.hpp"
#include "tstab/mt_functionals.hpp"
#include "tstab/random.hpp"
#include "tstab/thresholds.hpp"

namespace tstab {
namespace {

std::string show(const RatVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + to_pq(v[i]);
  return out + ")";
}

std::string show(const ToricRDivisor& d) { return d.variety().name() + show(d.coeffs()); }

Rng seeded(std::uint64_t seed, int salt) { return Rng(seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(salt)); }

VarietyPtr var(const char* name) { return builtin_variety(name); }

ToricRDivisor div(const char* name, std::initializer_list<int> a) {
  RatVector c;
  for (int x : a) c.emplace_back(x);
  return ToricRDivisor(var(name), std::move(c));
}

// Accumulates failures; the first few are kept for the report.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++cases_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) detail_ += (detail_.empty() ? "" : "; ") + what;
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }
  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    std::ostringstream os;
    os << (cases_ - failures_) << "/" << cases_ << " checks";
    if (!notes_.empty()) os << "; " << notes_;
    if (!detail_.empty()) os << "; failed: " << detail_;
    return os.str();
  }

 private:
  int cases_ = 0;
  int failures_ = 0;
  std::string detail_;
  std::string notes_;
};

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void golden_delta(Tally& t) {
  struct Case {
    ToricRDivisor l;
    Rational value;
    std::optional<RatVector> witness;
  };
  std::vector<Case> cases{
      {anticanonical(var("P1")), 1, {}},
      {anticanonical(var("P2")), 1, {}},
      {anticanonical(var("P3")), 1, {}},
      {anticanonical(var("P1xP1")), 1, {}},
      {anticanonical(var("dP1")), Rational(6, 7), RatVector{1, 1}},
      {div("P1", {0, 1}), 2, {}},
      {div("P1xP1", {1, 2, 0, 0}), 1, {}},
  };
  for (const auto& c : cases) {
    auto t0 = std::chrono::steady_clock::now();
    auto d = delta(c.l);
    double secs = elapsed(t0);
    bool ok = d.value == c.value && (!c.witness || d.witness == *c.witness) && secs < 1.0;
    t.expect(ok, "delta" + show(c.l) + " = " + to_pq(d.value) + " witness " + show(d.witness));
  }
}

void oracle_equivalence(Tally& t, std::uint64_t seed) {
  Rng rng = seeded(seed, 2);
  for (const char* name : {"P2", "P1xP1"}) {
    for (int k = 0; k < 20; ++k) {
      ToricRDivisor l = random_big_divisor(var(name), rng);
      auto exact = delta(l);
      auto oracle = delta_bruteforce(l, 12);
      Rational norm = 0;
      for (const auto& q : exact.witness) norm = std::max(norm, Rational(abs(q)));
      bool ok = oracle.value >= exact.value && (norm > 12 || oracle.value == exact.value);
      t.expect(ok, "delta" + show(l) + ": exact " + to_pq(exact.value) + " oracle " + to_pq(oracle.value));
    }
  }
}

std::vector<VarietyPtr> or_default(const std::vector<VarietyPtr>& given, std::initializer_list<const char*> names) {
  if (!given.empty()) return given;
  std::vector<VarietyPtr> out;
  for (const char* n : names) out.push_back(var(n));
  return out;
}

PropertyOutcome scaling_suite(std::uint64_t seed, const std::vector<VarietyPtr>& given) {
  Rng rng = seeded(seed, 3);
  PropertyOutcome out;
  const auto vars = or_default(given, {"P1", "P2", "P1xP1", "dP1", "P3"});
  for (std::size_t k = 0; k < 100; ++k) {
    ToricRDivisor l = random_big_divisor(vars[k % vars.size()], rng);
    Rational lambda = random_rational(rng, Rational(1, 10), 10, 7);
    ++out.cases;
    Rational d = delta(l).value, a = alpha(l).value;
    Rational dl = delta(l.scaled(lambda)).value, al = alpha(l.scaled(lambda)).value;
    if (lambda * dl != d || lambda * al != a) {
      out.passed = false;
      out.counterexample = "L = " + show(l) + ", lambda = " + to_pq(lambda) + ": delta " + to_pq(d) +
                           " vs lambda*delta(lambda L) " + to_pq(lambda * dl) + ", alpha " + to_pq(a) +
                           " vs " + to_pq(lambda * al);
      return out;
    }
  }
  return out;
}

PropertyOutcome comparison_suite(std::uint64_t seed, const std::vector<VarietyPtr>& given) {
  Rng rng = seeded(seed, 4);
  PropertyOutcome out;
  const auto vars = or_default(given, {"P1xP1"});
  for (std::size_t k = 0; k < 50; ++k) {
    ComparisonTriple tr = random_comparison_triple(vars[k % vars.size()], rng);
    ++out.cases;
    auto r = comparison_check(tr.l, tr.l_eps, tr.eps);
    if (!r.holds) {
      out.passed = false;
      out.counterexample = "L = " + show(tr.l) + ", L_eps = " + show(tr.l_eps) + ", eps = " + to_pq(tr.eps) +
                           ": " + to_pq(r.delta_plus) + " <= " + to_pq(r.delta) + " <= " + to_pq(r.delta_minus) +
                           " fails";
      return out;
    }
  }
  return out;
}

std::vector<ToricRDivisor> random_ample_set(std::uint64_t seed, int salt, const std::vector<VarietyPtr>& given) {
  Rng rng = seeded(seed, salt);
  const auto vars = or_default(given, {"P2", "P1xP1", "dP1"});
  std::vector<ToricRDivisor> out;
  for (std::size_t k = 0; k < 30; ++k) out.push_back(random_ample_divisor(vars[k % vars.size()], rng));
  return out;
}

PropertyOutcome bishop_suite(std::uint64_t seed, const std::vector<VarietyPtr>& given) {
  PropertyOutcome out;
  for (const auto& xi : random_ample_set(seed, 6, given)) {
    ++out.cases;
    auto b = bishop_check(xi);
    if (!b.holds) {
      out.passed = false;
      out.counterexample = show(xi) + ": delta^n vol = " + to_pq(b.lhs) + " > " + to_pq(b.bound);
      return out;
    }
  }
  return out;
}

PropertyOutcome sandwich_suite(std::uint64_t seed, const std::vector<VarietyPtr>& given) {
  PropertyOutcome out;
  for (const auto& xi : random_ample_set(seed, 7, given)) {
    ++out.cases;
    auto s = sandwich_check(xi);
    if (!s.lower || !s.upper) {
      out.passed = false;
      out.counterexample = show(xi) + ": alpha = " + to_pq(s.alpha) + ", delta = " + to_pq(s.delta);
      return out;
    }
  }
  return out;
}

void comparison_criterion(Tally& t, std::uint64_t seed) {
  PropertyOutcome p = comparison_suite(seed, {});
  t.expect(p.passed, p.counterexample);
  Rational e0 = epsilon_zero(1);
  t.expect(e0 > Rational(38, 100) && e0 < Rational(39, 100), "epsilon_zero(1) = " + to_pq(e0));
  t.note(std::to_string(p.cases) + " triples, eps0(1) = " + to_pq(e0));
}

void continuity_criterion(Tally& t, std::uint64_t seed) {
  Rng rng = seeded(seed, 5);
  RatVector dir;
  for (int i = 0; i < 4; ++i) dir.push_back(random_rational(rng, -1, 1, 4));
  if (is_zero(dir)) dir[3] = 1;
  std::vector<SweepSpec> paths{
      {anticanonical(var("P1xP1")), div("P1xP1", {1, 0, 0, 0}), 0, Rational(1, 2), 2},
      {anticanonical(var("dP1")), ToricRDivisor(var("dP1"), dir), 0, Rational(1, 4), 2},
  };
  for (auto& spec : paths) {
    std::vector<Rational> jumps;
    for (int steps : {11, 21, 41}) {
      spec.steps = steps;
      auto rows = continuity_sweep(spec);
      int admissible = 0;
      for (const auto& r : rows) {
        t.expect(!(r.flags & kEnvelopeViolated), "envelope violated at gamma " + to_pq(r.gamma) + " on " +
                                                     show(spec.direction));
        if (r.eps) ++admissible;
      }
      t.expect(admissible > 0, "no admissible step on " + show(spec.direction) + " with " + std::to_string(steps));
      jumps.push_back(max_consecutive_jump(rows));
    }
    bool decreasing = jumps[1] <= jumps[0] && jumps[2] <= jumps[1] && (sgn(jumps[0]) == 0 || jumps[2] < jumps[0]);
    t.expect(decreasing, "jumps " + to_pq(jumps[0]) + ", " + to_pq(jumps[1]) + ", " + to_pq(jumps[2]) + " on " +
                             show(spec.direction));
  }
}

void beta_bishop_criterion(Tally& t) {
  struct BetaCase {
    ToricRDivisor xi;
    Rational beta;
  };
  std::vector<BetaCase> betas{
      {div("P1", {0, 1}), 2}, {anticanonical(var("P2")), 1}, {anticanonical(var("dP1")), Rational(6, 7)}};
  for (const auto& c : betas) {
    Rational b = beta(c.xi);
    Rational s = nef_threshold(c.xi).value;
    Rational d = delta(c.xi).value;
    Rational m = s < d ? s : d;
    t.expect(b == c.beta && (sgn(s) <= 0 || b == m), "beta" + show(c.xi) + " = " + to_pq(b));
  }
  for (const char* name : {"P1", "P2", "P3"}) {
    auto b = bishop_check(anticanonical(var(name)));
    t.expect(b.holds && b.lhs == b.bound, std::string("Bishop on ") + name + ": " + to_pq(b.lhs));
  }
  auto b = bishop_check(anticanonical(var("dP1")));
  t.expect(b.holds && b.lhs == Rational(288, 49) && b.bound == 9, "Bishop on dP1: " + to_pq(b.lhs));
}

void sandwich_criterion(Tally& t, std::uint64_t seed) {
  std::vector<ToricRDivisor> golden{anticanonical(var("P1")),   anticanonical(var("P2")),
                                    anticanonical(var("P3")),   anticanonical(var("P1xP1")),
                                    anticanonical(var("dP1")),  div("P1", {0, 1}),
                                    div("P1xP1", {1, 2, 0, 0})};
  for (const auto& xi : golden) {
    auto s = sandwich_check(xi);
    t.expect(s.lower && s.upper, "sandwich" + show(xi) + ": alpha " + to_pq(s.alpha) + " delta " + to_pq(s.delta));
  }
  auto p1 = sandwich_check(anticanonical(var("P1")));
  t.expect(2 * p1.alpha == p1.delta && p1.alpha == Rational(1, 2), "P1 sandwich not tight on both sides");
  auto p2 = sandwich_check(anticanonical(var("P2")));
  t.expect(p2.alpha == Rational(1, 3) && 3 * p2.alpha == p2.delta, "P2 upper bound not tight");
  PropertyOutcome p = sandwich_suite(seed, {});
  t.expect(p.passed, p.counterexample);
}

void layer_cake_criterion(Tally& t, std::uint64_t seed) {
  Rng rng = seeded(seed, 8);
  const char* names[] = {"P1", "P2", "P1xP1", "dP1"};
  double worst = 0;
  for (int k = 0; k < 20; ++k) {
    ToricRDivisor l = random_big_divisor(var(names[k % 4]), rng);
    RatVector w = random_primitive(rng, l.dim(), 3);
    Rational exact = expected_vanishing(l, w);
    Rational quad = expected_vanishing_quadrature(l, w, 2000);
    double err = std::abs(to_double(exact - quad));
    worst = std::max(worst, err);
    t.expect(err <= 5e-3, "S" + show(l) + " at " + show(w) + ": " + to_pq(exact) + " vs " +
                              std::to_string(to_double(quad)));
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max error %.2e", worst);
  t.note(buf);
}

void functional_identities_criterion(Tally& t, std::uint64_t seed) {
  using namespace mt;
  FunctionalContext ctx(LogGrid::create(1, {1.0}, 128, 16.0), 1.0);
  double worst_cocycle = 0, worst_dle = 0;
  for (int k = 0; k < 20; ++k) {
    ToricPotential u = random_potential(ctx.grid(), seed * 1000 + static_cast<std::uint64_t>(k));
    ToricPotential v = random_potential(ctx.grid(), seed * 1000 + 500 + static_cast<std::uint64_t>(k));
    const double j = functional_J(ctx, u), i = functional_I(ctx, u);
    const double scale = std::max(1.0, std::abs(j));
    t.expect(std::abs((i - j) - j) <= 1e-9 * scale, "I - J != J on sample " + std::to_string(k));
    for (double lambda : {0.25, 0.5, 0.75}) {
      const double jl = functional_J(ctx, u.scaled(lambda));
      t.expect(std::abs(jl - lambda * lambda * j) <= 1e-9 * scale, "J(lu) != l^2 J(u) on sample " + std::to_string(k));
    }
    const double res = cocycle_check(ctx, u, v);
    worst_cocycle = std::max(worst_cocycle, res);
    t.expect(res < 1e-6 * scale, "cocycle residual " + std::to_string(res));
    const double d = functional_D(ctx, u), l = functional_L(ctx, u), e = functional_E(ctx, u);
    const double dle = std::abs(d - (l - e));
    worst_dle = std::max(worst_dle, dle);
    t.expect(dle < 1e-8 * std::max(1.0, std::abs(d)), "D - (L - E) residual " + std::to_string(dle));
    const double m = functional_M(ctx, u);
    t.expect(m >= d - 1e-12 * std::max(1.0, std::abs(d)), "M < D on sample " + std::to_string(k));
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "max cocycle %.1e, max |D-(L-E)| %.1e", worst_cocycle, worst_dle);
  t.note(buf);
}

void ding_criterion(Tally& t, std::uint64_t seed) {
  using namespace mt;
  FunctionalContext ctx(LogGrid::create(2, {1.0, 1.0}, 96, 16.0), 1.0);
  for (int k = 0; k < 20; ++k) {
    ToricPotential u = random_potential(ctx.grid(), seed * 2000 + static_cast<std::uint64_t>(k));
    for (double lambda : {0.25, 0.5, 0.75}) {
      auto r = ding_inequality_check(ctx, u, lambda);
      t.expect(r.holds, "Ding fails on sample " + std::to_string(k) + " lambda " + std::to_string(lambda));
    }
    auto s = ij_sandwich_check(ctx, u);
    t.expect(s.holds, "I-J sandwich fails on sample " + std::to_string(k));
  }
}

void j_comparison_criterion(Tally& t, std::uint64_t seed) {
  using namespace mt;
  FunctionalContext ctx(LogGrid::create(1, {1.0}, 128, 16.0), 1.0);
  const double eps = 0.05;
  for (int k = 0; k < 20; ++k) {
    ToricPotential u = random_potential(ctx.grid(), seed * 3000 + static_cast<std::uint64_t>(k));
    for (double r : {-eps, 0.0, eps}) {
      auto c = j_comparison_check(ctx, u, r, eps);
      t.expect(c.holds, "J comparison fails on sample " + std::to_string(k));
    }
  }
}

void probe_criterion(Tally& t) {
  using namespace mt;
  FunctionalContext ctx(LogGrid::create(1, {1.0}, 4097, 40.0), 1.0);
  const std::vector<double> lambdas{1.6, 1.8, 2.0, 2.2, 2.4};
  const std::vector<double> cs{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  std::string slopes;
  for (const auto& row : concentration_probe(ctx, lambdas, cs)) {
    const double expected = row.lambda / 2 - 1;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%.2f:%+.4f", slopes.empty() ? "" : " ", row.lambda, row.slope);
    slopes += buf;
    t.expect(std::abs(row.slope - expected) <= 0.05, "slope at lambda " + std::to_string(row.lambda));
  }
  t.note("slopes " + slopes);
}

const char* criterion_name(int id) {
  switch (id) {
    case 1: return "golden delta values";
    case 2: return "oracle equivalence";
    case 3: return "scaling exactness";
    case 4: return "comparison principle";
    case 5: return "continuity envelope";
    case 6: return "beta and Bishop";
    case 7: return "alpha sandwich";
    case 8: return "layer-cake oracle";
    case 9: return "functional identities (n=1)";
    case 10: return "Ding inequality (n=2)";
    case 11: return "J comparison";
    case 12: return "Moser-Trudinger threshold bracketing";
  }
  return "unknown";
}

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  CriterionResult r;
  r.id = id;
  r.name = criterion_name(id);
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  try {
    switch (id) {
      case 1: golden_delta(t); break;
      case 2: oracle_equivalence(t, seed); break;
      case 3: {
        PropertyOutcome p = scaling_suite(seed, {});
        t.expect(p.passed, p.counterexample);
        break;
      }
      case 4: comparison_criterion(t, seed); break;
      case 5: continuity_criterion(t, seed); break;
      case 6: beta_bishop_criterion(t); break;
      case 7: sandwich_criterion(t, seed); break;
      case 8: layer_cake_criterion(t, seed); break;
      case 9: functional_identities_criterion(t, seed); break;
      case 10: ding_criterion(t, seed); break;
      case 11: j_comparison_criterion(t, seed); break;
      case 12: probe_criterion(t); break;
      default: throw std::invalid_argument("no acceptance criterion " + std::to_string(id));
    }
    r.passed = t.ok();
    r.detail = t.summary();
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = elapsed(t0);
  return r;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kAcceptanceCriteria; ++id) {
    out.push_back(run_criterion(id, seed));
    if (on_result) on_result(out.back());
  }
  return out;
}

const std::vector<std::string>& property_suite_names() {
  static const std::vector<std::string> names{"bishop", "sandwich", "comparison", "scaling"};
  return names;
}

PropertyOutcome run_property_suite(const std::string& name, std::uint64_t seed,
                                   const std::vector<VarietyPtr>& varieties) {
  if (name == "bishop") return bishop_suite(seed, varieties);
  if (name == "sandwich") return sandwich_suite(seed, varieties);
  if (name == "comparison") return comparison_suite(seed, varieties);
  if (name == "scaling") return scaling_suite(seed, varieties);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace tstab
