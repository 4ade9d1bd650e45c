#include "doctest.h"

#include "psihat/arith.hpp"
#include "psihat/verify.hpp"

using namespace psihat;

TEST_SUITE("verify") {

TEST_CASE("exponent multiset enumeration") {
  long count = 0;
  std::vector<std::vector<long>> seen;
  for_each_exponent_multiset(6, [&](std::span<const long> k) {
    ++count;
    seen.emplace_back(k.begin(), k.end());
  });
  CHECK(count == 3);  // partitions of 3: (3), (2,1), (1,1,1)
  CHECK(seen[0] == std::vector<long>{3, 0, 0, 0, 0, 0});
  CHECK(seen[1] == std::vector<long>{2, 1, 0, 0, 0, 0});
  CHECK(seen[2] == std::vector<long>{1, 1, 1, 0, 0, 0});
}

TEST_CASE("clean run passes") {
  VerifyOptions opts;
  opts.n_max = 6;
  opts.threads = 2;
  const VerifyReport report = run_verification(opts);
  CHECK(report.all_passed());
  CHECK(report.failed == 0);
  CHECK(report.checks.size() == 6);
}

TEST_CASE("injected fault is detected") {
  VerifyOptions opts;
  opts.n_max = 5;
  opts.inject_multinomial_fault = true;
  const VerifyReport report = run_verification(opts);
  CHECK_FALSE(report.all_passed());
  bool engine_check_failed = false;
  for (const auto& c : report.checks) {
    if (c.name == "three-engine agreement" && !c.passed) engine_check_failed = true;
    if (!c.passed) CHECK_FALSE(c.detail.empty());
  }
  CHECK(engine_check_failed);
  CHECK_FALSE(multinomial_fault_injected());  // guard restored the flag
}

}  // TEST_SUITE
