#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tstab/toric.hpp"

namespace tstab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

constexpr int kAcceptanceCriteria = 12;

// Runs one acceptance criterion (1..12). Exceptions inside a criterion
// are reported as a failure with the message in `detail`.
CriterionResult run_criterion(int id, std::uint64_t seed);

// All criteria in order; `on_result` sees each one as it finishes.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

struct PropertyOutcome {
  bool passed = true;
  int cases = 0;
  std::string counterexample;  // exact description of the first failure
};

// Named exact property suites: bishop, sandwich, comparison, scaling.
// Samples are drawn on `varieties` in rotation; an empty list selects the
// builtin defaults of each suite. Throws std::invalid_argument for an
// unknown name.
PropertyOutcome run_property_suite(const std::string& name, std::uint64_t seed,
                                   const std::vector<VarietyPtr>& varieties = {});
const std::vector<std::string>& property_suite_names();

}  // namespace tstab
