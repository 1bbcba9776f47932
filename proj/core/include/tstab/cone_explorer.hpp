#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tstab/rational.hpp"
#include "tstab/toric.hpp"

namespace tstab {

// Largest rational eps with denominator <= 10^6 satisfying
// ((1+e-e^2)/(1+e+e^2))^n (1+e-e^2) >= 1.
Rational epsilon_zero(int n);

// The defining inequality of epsilon_zero, evaluated exactly.
bool epsilon_zero_predicate(int n, const Rational& eps);

struct ComparisonResult {
  bool holds;
  Rational delta_plus;   // delta(L + eps L_eps)
  Rational delta;        // delta(L)
  Rational delta_minus;  // delta(L - eps L_eps)
};

// Checks delta(L + eps L_eps) <= delta(L) <= delta(L - eps L_eps).
// Throws EpsilonTooLarge unless 0 < eps < epsilon_zero(n), NotBig if L is
// not big, HypothesisViolated if (1+eps)L - L_eps or L_eps - (1-eps)L is
// not big.
ComparisonResult comparison_check(const ToricRDivisor& l, const ToricRDivisor& l_eps, const Rational& eps);

struct SweepSpec {
  ToricRDivisor base;
  ToricRDivisor direction;
  Rational gamma_min;
  Rational gamma_max;
  int steps = 2;
};

enum SweepFlag : unsigned {
  kNotBig = 1,
  kNotAmple = 2,
  kEnvelopeSkipped = 4,  // no admissible eps < epsilon_zero at this step
  kEnvelopeViolated = 8,
};

struct SweepRow {
  Rational gamma;
  std::optional<Rational> delta;
  std::optional<RatVector> delta_witness;
  std::optional<Rational> alpha;
  std::optional<Rational> s;
  std::optional<Rational> beta;
  std::optional<Rational> vol;
  unsigned flags = 0;
  // Envelope modulus for the step ending at this row, when admissible.
  std::optional<Rational> eps;
};

// Smallest convenient rational eps (to 1e-9) with
// L +- ((1+eps) |dgamma| / eps^2) S both big, where `radius` is the
// distance from 0 to the nearer end of the big interval of L along S.
// nullopt when radius is unbounded.
std::optional<Rational> envelope_epsilon(const std::optional<Rational>& radius, const Rational& dgamma);

// Rows in order of increasing gamma. Throws std::invalid_argument if
// steps < 2 or gamma_min > gamma_max.
std::vector<SweepRow> continuity_sweep(const SweepSpec& spec);

// Largest |delta(gamma_{k+1}) - delta(gamma_k)| over consecutive big rows.
Rational max_consecutive_jump(const std::vector<SweepRow>& rows);

// lambda delta(lambda L) = delta(L) for every lambda. Throws NotBig.
bool scaling_check(const ToricRDivisor& l, const std::vector<Rational>& lambdas);

std::string sweep_csv_header();
// Decimal values with 12 significant digits.
std::string sweep_csv(const std::vector<SweepRow>& rows);
// The same table with exact "p/q" values.
std::string sweep_exact_csv(const std::vector<SweepRow>& rows);

}  // namespace tstab
