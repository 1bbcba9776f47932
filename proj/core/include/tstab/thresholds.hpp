#pragma once

#include <optional>

#include "tstab/fan.hpp"
#include "tstab/rational.hpp"
#include "tstab/toric.hpp"

namespace tstab {

// Toric valuations are nonzero primitive integer vectors w in N = Z^n.
bool is_toric_valuation(const RatVector& w);

// A(w) = sum of the coordinates of w in the ray basis of a cone containing w.
Rational log_discrepancy(const ToricVariety& x, const RatVector& w);
ConewiseLinearFunction log_discrepancy_function(const ToricVariety& x);

// S_L(w) = <barycenter(P_L), w> - min_{P_L} <x, w>. Throws NotBig.
Rational expected_vanishing(const ToricRDivisor& l, const RatVector& w);
// S_L as a conewise linear function on the normal fan of P_L.
ConewiseLinearFunction expected_vanishing_function(const ToricRDivisor& l);

// Composite trapezoid rule for (1/vol L) int_0^T vol(L - t F_w) dt with
// T = pseff_threshold(L, w), each sample an exact volume. Throws NotBig.
Rational expected_vanishing_quadrature(const ToricRDivisor& l, const RatVector& w, int steps);

// T_L(w) = max_{P_L} <x, w> - min_{P_L} <x, w>. Throws NotBig.
Rational pseff_threshold(const ToricRDivisor& l, const RatVector& w);
// T_L on the common refinement of the normal fan and its reflection.
ConewiseLinearFunction pseff_threshold_function(const ToricRDivisor& l);

// (value, witness) with the witness a primitive ray of the refinement.
RatioMinimum delta(const ToricRDivisor& l);
RatioMinimum alpha(const ToricRDivisor& l);

// min A/S over primitive w with |w|_inf <= radius.
RatioMinimum delta_bruteforce(const ToricRDivisor& l, int radius);

// s if s <= 0, else min(s, delta). Throws NotAmple.
Rational beta(const ToricRDivisor& xi);

struct BishopCheck {
  bool holds;
  Rational lhs;    // delta^n vol
  Rational bound;  // (n+1)^n
};
// Throws NotAmple.
BishopCheck bishop_check(const ToricRDivisor& xi);

struct SandwichCheck {
  bool lower;  // (n+1)/n alpha <= delta
  bool upper;  // delta <= (n+1) alpha
  Rational alpha;
  Rational delta;
};
// Throws NotAmple.
SandwichCheck sandwich_check(const ToricRDivisor& xi);

struct CsckCheck {
  bool holds;
  bool kahler;     // K_X + lambda xi ample
  bool slope_gap;  // lambda > n mu - (n-1) s
  Rational lambda;
};
// lambda is a lower bound for the analytic delta; defaults to
// (n+1)/n alpha(xi). Throws NotAmple or SlopeUndefined.
CsckCheck csck_criterion(const ToricRDivisor& xi, std::optional<Rational> lower_bound = std::nullopt);

}  // namespace tstab
