#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "predshare/empirical.hpp"

namespace predshare {

struct ClauseResult {
  std::string description;
  bool passed = false;
  std::string detail;
};

struct CheckResult {
  std::string name;
  bool passed = false;  // conjunction of the clauses
  std::vector<ClauseResult> clauses;
};

struct VerifyOptions {
  std::string only;  // substring filter on check names; empty runs all
  std::uint64_t worlds_samples = 1000000;
  std::uint64_t worlds_seed = 1;
  std::uint64_t empirical_seed = default_empirical_seed;
  // Negative control: evaluates the closed-form no-sharing solution with the
  // alternate secondary-threshold reading, which must break the
  // known-corr-closed-form check.
  bool inject_closed_form_fault = false;
};

// The full verification battery (or the checks matching options.only), in a
// fixed order. Each check is independent; a check that throws is reported as
// failed with the exception text.
std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

bool all_passed(const std::vector<CheckResult>& results);

std::string verification_to_json(const std::vector<CheckResult>& results);

}  // namespace predshare
