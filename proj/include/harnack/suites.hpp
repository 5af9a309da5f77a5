#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "harnack/serialization.hpp"

namespace harnack {

inline constexpr const char* kVersion = "0.1.0";

struct SuiteCase {
  std::string id;
  std::string description;
  std::string inputs_digest;  ///< FNV-1a 64 of the serialized case inputs
  bool pass = false;
  std::map<std::string, double> metrics;
  std::map<std::string, double> tolerances;
};

struct SuiteReport {
  std::string suite_name;
  std::string anchor;  ///< the statement the suite exercises
  std::uint64_t seed = 0;
  int requested_cases = 0;
  std::vector<SuiteCase> cases;  ///< sorted by id
  int passed = 0;
  int failed = 0;
  TolerancePolicy tol;

  [[nodiscard]] bool all_pass() const { return failed == 0; }
};

const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);

/// Runs `cases` seeded cases of the named invariant set. Unknown names are invalid-input.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, int cases, const TolerancePolicy& tol = {});

Json suite_report_to_json(const SuiteReport& report);

/// 16 hex digits of the FNV-1a 64 hash of the compact dump of `inputs`.
std::string inputs_digest(const Json& inputs);

} // namespace harnack
