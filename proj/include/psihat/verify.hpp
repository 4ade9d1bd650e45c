#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace psihat {

// Visits one dense exponent vector per multiset {k : sum k = n-3}, largest
// exponents first (representatives suffice: every integral is invariant
// under permuting k).
void for_each_exponent_multiset(int n, const std::function<void(std::span<const long>)>& visit);

struct VerifyOptions {
  int n_max = 8;            // top of the 5..n_max sweep
  int genfun_n_max = 0;     // 0 = min(n_max, 10)
  unsigned threads = 0;     // 0 = hardware concurrency
  bool inject_multinomial_fault = false;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // first counterexample when failed
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  int passed = 0;
  int failed = 0;
  bool all_passed() const { return failed == 0; }
};

// Runs the cross-verification suites: three-engine agreement and
// generating-function agreement over every exponent multiset, partition
// counts against telephone numbers, the string equation, series grading,
// the vanishing window of G, and brute-force preimage counts.
VerifyReport run_verification(const VerifyOptions& options);

}  // namespace psihat
