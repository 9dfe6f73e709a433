#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace specconvex {

struct SuiteOptions {
  int trials = 0;  ///< 0 selects the suite default
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;  ///< Monte-Carlo samples for the steiner suite; 0 selects the default
};

struct SuiteResult {
  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  double max_error = 0.0;  ///< largest deviation seen by a tolerance check
  nlohmann::json details = nlohmann::json::object();

  bool passed() const { return failures == 0 && checks > 0; }
};

/// Names accepted by run_suite, in the order "all" runs them.
const std::vector<std::string>& suite_names();
int default_trials(const std::string& suite);

/// Runs one oracle-equivalence suite. Throws InputError on an unknown name.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options);

/// Deterministic report: no timings, fixed key order.
nlohmann::json verify_report(const std::vector<SuiteResult>& results, const SuiteOptions& options);

}  // namespace specconvex
