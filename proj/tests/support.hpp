#pragma once

#include <string>

#include "tstab/rational.hpp"
#include "tstab/toric.hpp"

namespace tstab::test {

inline Rational Q(const char* text) { return parse_rational(text); }
inline RatVector V(const char* text) { return parse_rational_list(text); }
inline VarietyPtr X(const char* name) { return builtin_variety(name); }
inline ToricRDivisor D(const char* name, const char* coeffs) { return parse_divisor(builtin_variety(name), coeffs); }

inline RatVector ints(std::initializer_list<long> xs) {
  RatVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace tstab::test
