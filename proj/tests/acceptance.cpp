// Acceptance battery driver. Runs one verification check per criterion and
// prints a single PASS/FAIL line, plus the failing clauses on failure.
//
// Usage:
//   acceptance                   run all twelve criteria
//   acceptance --criterion N     run criterion N (1-12)
//   acceptance --negative-control
//       run criterion 2 with the closed-form fault injected; exits 0 when
//       the battery catches the fault.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "predshare/verify.hpp"

namespace {

constexpr const char* criterion_checks[12] = {
    "corr-joint-roundtrip",
    "known-corr-closed-form",
    "full-dominates-infer",
    "symmetric-cost-no-sharing",
    "equal-accuracy-full-sharing",
    "train-sharing-witness",
    "infer-sharing-witness",
    "one-sample-witness",
    "known-independent-full-sharing",
    "oracle-equivalence",
    "interval-worlds",
    "empirical-pipeline",
};

predshare::CheckResult run_one(int criterion, bool inject_fault) {
  predshare::VerifyOptions options;
  options.only = criterion_checks[criterion - 1];
  options.inject_closed_form_fault = inject_fault;
  auto results = predshare::run_verification(options);
  if (results.size() != 1 || results.front().name != options.only) {
    predshare::CheckResult missing;
    missing.name = options.only;
    missing.passed = false;
    missing.clauses.push_back({"check is registered", false,
                               "verification battery did not run the check"});
    return missing;
  }
  return results.front();
}

bool report(int criterion, const predshare::CheckResult& result) {
  std::printf("criterion %02d  %-32s %s\n", criterion, result.name.c_str(),
              result.passed ? "PASS" : "FAIL");
  for (const auto& clause : result.clauses) {
    if (clause.passed) continue;
    std::printf("  failed clause: %s\n", clause.description.c_str());
    if (!clause.detail.empty()) std::printf("    %s\n", clause.detail.c_str());
  }
  return result.passed;
}

}  // namespace

int main(int argc, char** argv) {
  int criterion = 0;
  bool negative_control = false;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) {
      criterion = std::atoi(argv[++i]);
    } else if (!std::strcmp(argv[i], "--negative-control")) {
      negative_control = true;
    } else {
      std::fprintf(stderr, "unknown argument: %s\n", argv[i]);
      return 2;
    }
  }
  if (criterion < 0 || criterion > 12) {
    std::fprintf(stderr, "criterion must be in 1..12\n");
    return 2;
  }

  if (negative_control) {
    const auto result = run_one(2, true);
    const bool caught = !result.passed;
    std::printf("negative control  injected closed-form fault: %s\n",
                caught ? "caught" : "MISSED");
    return caught ? 0 : 1;
  }

  bool all_ok = true;
  for (int c = 1; c <= 12; ++c) {
    if (criterion != 0 && c != criterion) continue;
    all_ok = report(c, run_one(c, false)) && all_ok;
  }
  return all_ok ? 0 : 1;
}
