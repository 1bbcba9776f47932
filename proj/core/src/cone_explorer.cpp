#include "tstab/cone_explorer.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include "parallel.hpp"
#include "tstab/errors.hpp"
#include "tstab/thresholds.hpp"

namespace tstab {
namespace {

constexpr long kMaxDenominator = 1000000;

// Largest k in [0, kmax] with pred(k), given pred(0) and monotonicity.
long largest_true(long kmax, const std::function<bool(long)>& pred) {
  if (kmax <= 0) return 0;
  long lo = 0;
  long step = 1;
  while (lo + step <= kmax && pred(lo + step)) {
    lo += step;
    step *= 2;
  }
  long hi = std::min(kmax, lo + step);  // pred(hi) false unless hi == kmax
  if (hi == kmax && pred(hi)) return hi;
  while (hi - lo > 1) {
    long mid = lo + (hi - lo) / 2;
    if (pred(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

std::string decimal(const Rational& q) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", to_double(q));
  return buf;
}

std::string witness_text(const RatVector& w) {
  std::string out;
  for (const auto& q : w) out += (out.empty() ? "" : ";") + q.get_num().get_str();
  return out;
}

std::string csv(const std::vector<SweepRow>& rows, const std::function<std::string(const Rational&)>& fmt) {
  std::string out = sweep_csv_header() + "\n";
  auto cell = [&](const std::optional<Rational>& q) { return q ? fmt(*q) : std::string(); };
  for (const auto& r : rows) {
    out += fmt(r.gamma) + "," + cell(r.delta) + "," + (r.delta_witness ? witness_text(*r.delta_witness) : "") +
           "," + cell(r.alpha) + "," + cell(r.s) + "," + cell(r.beta) + "," + cell(r.vol) + "," +
           std::to_string(r.flags) + "\n";
  }
  return out;
}

}  // namespace

bool epsilon_zero_predicate(int n, const Rational& eps) {
  const Rational e2 = eps * eps;
  const Rational a = 1 + eps - e2;
  const Rational b = 1 + eps + e2;
  Rational lhs = a;
  const Rational ratio = a / b;
  for (int i = 0; i < n; ++i) lhs *= ratio;
  return lhs >= 1;
}

Rational epsilon_zero(int n) {
  if (n < 1) throw std::invalid_argument("epsilon_zero: n must be positive");
  // Stern-Brocot descent: left satisfies the inequality, right does not,
  // and no fraction strictly between them has a smaller denominator.
  long a = 0, b = 1, c = 1, d = 1;
  while (true) {
    long kl = largest_true((kMaxDenominator - b) / d, [&](long k) {
      return epsilon_zero_predicate(n, Rational(a + k * c, b + k * d));
    });
    a += kl * c;
    b += kl * d;
    long kr = largest_true((kMaxDenominator - d) / b, [&](long k) {
      return !epsilon_zero_predicate(n, Rational(c + k * a, d + k * b));
    });
    c += kr * a;
    d += kr * b;
    if (kl == 0 && kr == 0) break;
  }
  return Rational(a, b);
}

ComparisonResult comparison_check(const ToricRDivisor& l, const ToricRDivisor& l_eps, const Rational& eps) {
  const Rational e0 = epsilon_zero(l.dim());
  if (sgn(eps) <= 0 || eps >= e0) {
    throw EpsilonTooLarge("comparison_check: eps = " + to_pq(eps) + " is outside (0, " + to_pq(e0) + ")");
  }
  if (!is_big(l)) throw NotBig("comparison_check: L is not big");
  if (!is_big(l.scaled(1 + eps) - l_eps)) {
    throw HypothesisViolated("comparison_check: (1+eps)L - L_eps is not big");
  }
  if (!is_big(l_eps - l.scaled(1 - eps))) {
    throw HypothesisViolated("comparison_check: L_eps - (1-eps)L is not big");
  }
  ComparisonResult r;
  r.delta_plus = delta(l + l_eps.scaled(eps)).value;
  r.delta = delta(l).value;
  r.delta_minus = delta(l - l_eps.scaled(eps)).value;
  r.holds = r.delta_plus <= r.delta && r.delta <= r.delta_minus;
  return r;
}

std::optional<Rational> envelope_epsilon(const std::optional<Rational>& radius, const Rational& dgamma) {
  if (!radius) return std::nullopt;
  const Rational g = abs(dgamma);
  const Rational& r = *radius;
  // Need r eps^2 - g eps - g > 0, i.e. (1+eps) g / eps^2 < r.
  const double gd = to_double(g);
  const double rd = to_double(r);
  const double root = (gd + std::sqrt(gd * gd + 4 * rd * gd)) / (2 * rd);
  const long scale = 1000000000;
  Rational eps(static_cast<long>(std::floor(root * scale)), scale);
  eps.canonicalize();
  const Rational tick(1, scale);
  while (sgn(eps) <= 0 || r * eps * eps - g * eps - g <= 0) eps += tick;
  return eps;
}

std::vector<SweepRow> continuity_sweep(const SweepSpec& spec) {
  if (spec.steps < 2) throw std::invalid_argument("continuity_sweep: steps must be at least 2");
  if (spec.gamma_min > spec.gamma_max) throw std::invalid_argument("continuity_sweep: empty gamma range");
  const int n = spec.base.dim();
  const std::size_t count = static_cast<std::size_t>(spec.steps);
  std::vector<SweepRow> rows(count);
  std::vector<std::optional<Rational>> radius(count);

  detail::parallel_for(count, [&](std::size_t k) {
    SweepRow& row = rows[k];
    row.gamma = spec.gamma_min + (spec.gamma_max - spec.gamma_min) * static_cast<long>(k) / (spec.steps - 1);
    ToricRDivisor d = spec.base + spec.direction.scaled(row.gamma);
    Rational v = vol(d);
    if (sgn(v) <= 0) {
      row.flags |= kNotBig;
      return;
    }
    row.vol = v;
    auto dm = delta(d);
    row.delta = dm.value;
    row.delta_witness = dm.witness;
    row.alpha = alpha(d).value;
    if (is_ample(d)) {
      row.s = nef_threshold(d).value;
      row.beta = beta(d);
    } else {
      row.flags |= kNotAmple;
    }
    BigInterval iv = big_interval(d, spec.direction);
    if (iv.lower && iv.upper) {
      radius[k] = std::min(*iv.upper, Rational(-*iv.lower));
    } else if (iv.lower) {
      radius[k] = -*iv.lower;
    } else if (iv.upper) {
      radius[k] = *iv.upper;
    }
  });

  const Rational e0 = epsilon_zero(n);
  for (std::size_t k = 1; k < count; ++k) {
    const SweepRow& prev = rows[k - 1];
    SweepRow& row = rows[k];
    if (!prev.delta || !row.delta) continue;
    const Rational dg = row.gamma - prev.gamma;
    auto eps = envelope_epsilon(radius[k - 1], dg);
    if (!eps) {
      // S is numerically trivial along the path; delta must not move.
      if (*row.delta != *prev.delta) row.flags |= kEnvelopeViolated;
      continue;
    }
    if (*eps >= e0) {
      row.flags |= kEnvelopeSkipped;
      continue;
    }
    row.eps = eps;
    const Rational& d0 = *prev.delta;
    if (*row.delta < (1 - *eps) * d0 || *row.delta > (1 + *eps) * d0) row.flags |= kEnvelopeViolated;
  }
  return rows;
}

Rational max_consecutive_jump(const std::vector<SweepRow>& rows) {
  Rational best = 0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (!rows[k - 1].delta || !rows[k].delta) continue;
    Rational j = abs(*rows[k].delta - *rows[k - 1].delta);
    if (j > best) best = j;
  }
  return best;
}

bool scaling_check(const ToricRDivisor& l, const std::vector<Rational>& lambdas) {
  if (!is_big(l)) throw NotBig("scaling_check: L is not big");
  const Rational d = delta(l).value;
  for (const auto& lambda : lambdas) {
    if (sgn(lambda) <= 0) throw std::invalid_argument("scaling_check: lambda must be positive");
    if (lambda * delta(l.scaled(lambda)).value != d) return false;
  }
  return true;
}

std::string sweep_csv_header() { return "gamma,delta,delta_witness,alpha,s,beta,vol,flags"; }

std::string sweep_csv(const std::vector<SweepRow>& rows) { return csv(rows, decimal); }

std::string sweep_exact_csv(const std::vector<SweepRow>& rows) {
  return csv(rows, [](const Rational& q) { return to_pq(q); });
}

}  // namespace tstab
