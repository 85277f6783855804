#pragma once

// Randomized property suites over every module. Each suite draws its
// instances from its own generator, seeded from the run seed and the suite
// index, so results do not depend on which other suites run.

#include <cstdint>
#include <string>
#include <vector>

namespace semiortho {

struct SelfTestOptions {
  std::uint64_t seed = 42;
  int trials = 100;
  // Test builds only: flips the attainment-route verdict inside the real
  // route-equivalence suite so the failure path can be exercised.
  bool inject_fault = false;
  // Empty means all suites; otherwise suite names to run.
  std::vector<std::string> only;
};

struct SuiteResult {
  std::string name;
  std::string module;
  int trials = 0;
  int failures = 0;
  double seconds = 0.0;
  std::string counterexample;  // JSON of the first failing trial, empty if none

  bool passed() const { return failures == 0; }
};

std::vector<std::string> selftest_suite_names();
std::vector<SuiteResult> run_selftest(const SelfTestOptions& options);

// {"schema":1,"seed":..,"trials":..,"passed":..,"suites":[..]}; timing fields
// are included only when requested so the rest is byte-stable.
std::string selftest_json(const SelfTestOptions& options, const std::vector<SuiteResult>& results,
                          bool include_timing);

}  // namespace semiortho
