#pragma once

#include <cstdint>
#include <random>

#include "tstab/rational.hpp"
#include "tstab/toric.hpp"

namespace tstab {

using Rng = std::mt19937_64;

// Uniform p/q with 1 <= q <= max_den and lo <= p/q <= hi.
Rational random_rational(Rng& rng, const Rational& lo, const Rational& hi, int max_den);

// Rejection samplers; coefficients have small denominators, and a random
// lattice translation is applied so that inputs are not all "centered".
ToricRDivisor random_big_divisor(const VarietyPtr& x, Rng& rng);
ToricRDivisor random_ample_divisor(const VarietyPtr& x, Rng& rng);

// Random nonzero primitive integer vector with |w|_inf <= radius.
RatVector random_primitive(Rng& rng, int dim, int radius);

struct ComparisonTriple {
  ToricRDivisor l;
  ToricRDivisor l_eps;
  Rational eps;
};

// L big, 0 < eps < epsilon_zero(n), and both (1+eps)L - L_eps and
// L_eps - (1-eps)L big.
ComparisonTriple random_comparison_triple(const VarietyPtr& x, Rng& rng);

}  // namespace tstab
