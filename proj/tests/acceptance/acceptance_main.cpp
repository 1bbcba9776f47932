// Prints one [PASS]/[FAIL] line per acceptance criterion. Exit status is
// nonzero if any criterion fails.
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "tstab/suite.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 0;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  int failed = 0;
  tstab::run_acceptance(seed, [&](const tstab::CriterionResult& r) {
    if (!r.passed) ++failed;
    std::printf("[%s] AC%d %s (%.2fs): %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
  });
  std::printf("%d/%d criteria passed\n", tstab::kAcceptanceCriteria - failed, tstab::kAcceptanceCriteria);
  return failed == 0 ? 0 : 1;
}
