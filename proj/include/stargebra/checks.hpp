#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Randomised invariant suite behind the `check` command. Each property draws
// its cases from its own generator seeded with seed + property index, so the
// report does not depend on scheduling.
namespace stargebra::checks {

struct PropertyResult {
  std::string module;
  std::string name;
  int cases = 0;
  int passed = 0;
  double max_residual = 0.0;  // normalised as the tolerance is
  double tolerance = 0.0;
  std::string first_error;    // first exception message, if any case threw

  bool ok() const { return cases > 0 && passed == cases; }
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  /// Multiplies every property's case count.
  double scale = 1.0;
  bool parallel = true;
};

std::vector<PropertyResult> run_suite(const SuiteOptions& options);

}  // namespace stargebra::checks
