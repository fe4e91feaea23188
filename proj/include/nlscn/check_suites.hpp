// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace nlscn {

enum class CheckSuite { Identities, Stability, Oracles };

CheckSuite check_suite_from_string(const std::string& name);

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double limit = 0.0;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool all_passed() const;
  nlohmann::json to_json() const;
};

/// Runs one of the built-in verification suites:
///  - identities: sampled algebraic identity and truncation inequalities
///  - stability:  randomized perturbed runs against the L2 stability bound
///  - oracles:    dense cross-checks of the sparse solvers on small meshes
SuiteReport run_check_suite(CheckSuite suite, std::uint64_t seed = 0);

}  // namespace nlscn
