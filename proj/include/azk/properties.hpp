#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace azk::properties {

struct PropertyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t count = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  /// Description of the first failing instance; empty when all pass.
  std::string first_counterexample;
};

/// Names of the available invariant suites, sorted.
std::vector<std::string> suite_names();

/// Runs `count` seeded instances of a suite. Deterministic in (suite, seed,
/// count). E_INVALID_INPUT for an unknown suite.
PropertyReport run_suite(const std::string& suite, std::uint64_t seed, std::size_t count);

}  // namespace azk::properties
