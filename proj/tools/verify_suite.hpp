#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hhbounds/convexity.hpp"

namespace hhb::cli {

struct VerifyConfig {
  int cases = 200;
  std::uint64_t seed = 0;
  /// Inner cell count for the inequality and chain checks.
  int m = 16;
  int oracle_grid = 1024;
  int convexity_samples = kDefaultConvexitySamples;
  double convexity_tol = kDefaultConvexityTol;
  bool inject_concave = false;
};

struct PropertyTally {
  std::string name;
  int checked = 0;
  int failed = 0;
  int skipped = 0;
  /// Smallest normalised slack seen; negative beyond tolerance is a failure.
  std::optional<double> worst_slack;
};

struct PropertyFailure {
  std::string property;
  int case_index = 0;
  std::uint64_t case_seed = 0;
  std::string parameters;
  double slack = 0;
};

struct GateRejection {
  int case_index = 0;
  std::uint64_t case_seed = 0;
  std::string label;
  ConvexityReport report;
};

struct VerifyOutcome {
  std::vector<PropertyTally> properties;
  std::vector<PropertyFailure> failures;
  std::optional<GateRejection> rejected;

  bool passed() const { return !rejected && failures.empty(); }
};

/// Runs the property suite over `cases` generated instances. Case i uses
/// derive_seed(seed, i); cases may run concurrently but results are merged
/// in case order.
VerifyOutcome run_verify(const VerifyConfig& cfg);

}  // namespace hhb::cli
