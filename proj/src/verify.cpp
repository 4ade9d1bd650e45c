#include "psihat/verify.hpp"

#include <future>
#include <map>
#include <sstream>
#include <thread>

#include "psihat/intersections.hpp"
#include "psihat/series.hpp"

namespace psihat {

void for_each_exponent_multiset(int n, const std::function<void(std::span<const long>)>& visit) {
  const long target = n - 3;
  if (target < 0) return;
  std::vector<long> k;
  std::function<void(long, long)> rec = [&](long remaining, long maxpart) {
    if (remaining == 0) {
      std::vector<long> dense = k;
      dense.resize(n, 0);
      visit(dense);
      return;
    }
    for (long p = std::min(remaining, maxpart); p >= 1; --p) {
      k.push_back(p);
      rec(remaining - p, p);
      k.pop_back();
    }
  };
  rec(target, target == 0 ? 1 : target);
}

namespace {

std::string format_case(int n, std::span<const long> k) {
  std::ostringstream os;
  os << "n=" << n << " k=(";
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i) os << ",";
    os << k[i];
  }
  os << ")";
  return os.str();
}

struct FaultGuard {
  bool active;
  explicit FaultGuard(bool enable) : active(enable) {
    if (active) inject_multinomial_fault(true);
  }
  ~FaultGuard() {
    if (active) inject_multinomial_fault(false);
  }
};

CheckResult check_engine_agreement(int n_max, unsigned threads) {
  CheckResult res{"three-engine agreement", true, ""};
  struct Case {
    int n;
    std::vector<long> k;
  };
  std::vector<Case> cases;
  for (int n = 5; n <= n_max; ++n) {
    for_each_exponent_multiset(
        n, [&](std::span<const long> k) { cases.push_back({n, {k.begin(), k.end()}}); });
  }
  const unsigned groups = std::max(1u, std::min<unsigned>(threads, (unsigned)cases.size()));
  std::vector<std::future<std::string>> futures;
  for (unsigned g = 0; g < groups; ++g) {
    futures.push_back(std::async(std::launch::async, [&, g]() -> std::string {
      for (std::size_t i = g; i < cases.size(); i += groups) {
        const PsiHatMonomial m(cases[i].n, cases[i].k);
        const Int direct = integrate_direct(m);
        const Int reduced = integrate_reduced(m);
        const Int pk = integrate_pk(m);
        if (direct != reduced || direct != pk) {
          return format_case(cases[i].n, cases[i].k) + ": direct=" + to_string(direct) +
                 " reduced=" + to_string(reduced) + " pk=" + to_string(pk);
        }
      }
      return "";
    }));
  }
  for (auto& f : futures) {
    std::string bad = f.get();
    if (!bad.empty() && res.passed) {
      res.passed = false;
      res.detail = bad;
    }
  }
  return res;
}

CheckResult check_genfun_agreement(int genfun_n_max) {
  CheckResult res{"generating-function agreement", true, ""};
  const FormalSeries G = build_G(genfun_n_max);
  for (int n = 5; n <= genfun_n_max && res.passed; ++n) {
    for_each_exponent_multiset(n, [&](std::span<const long> k) {
      if (!res.passed) return;
      const PsiHatMonomial m(n, {k.begin(), k.end()});
      const Int direct = integrate_direct(m);
      const Int from_g = intersection_from_G(G, SVector::from_exponents(k));
      if (direct != from_g) {
        res.passed = false;
        res.detail = format_case(n, k) + ": direct=" + to_string(direct) +
                     " genfun=" + to_string(from_g);
      }
    });
  }
  return res;
}

CheckResult check_partition_counts(int n_max) {
  CheckResult res{"partition counts vs telephone numbers", true, ""};
  const int top = std::min(n_max + 2, 12);
  for (int n = 1; n <= top && res.passed; ++n) {
    long count = 0;
    for_each_partition(n, [&](const HalfPartition&) { ++count; });
    if (Int(count) != telephone_number(n)) {
      res.passed = false;
      res.detail = "n=" + std::to_string(n) + ": enumerated " + std::to_string(count) +
                   ", telephone " + to_string(telephone_number(n));
    }
  }
  return res;
}

CheckResult check_string_eq() {
  CheckResult res{"string equation on F (n_max=10)", true, ""};
  if (!check_string_equation(build_witten_F(10))) {
    res.passed = false;
    res.detail = "string differential equation violated";
  }
  return res;
}

CheckResult check_grading(int genfun_n_max) {
  CheckResult res{"series grading", true, ""};
  const FormalSeries F = build_witten_F(genfun_n_max);
  const FormalSeries G = build_G(genfun_n_max);
  for (const auto* series : {&F, &G}) {
    for (const auto& [key, c] : series->terms()) {
      if (key_weight(key) != key_degree(key) - 3) {
        res.passed = false;
        res.detail = "ungraded monomial stored";
        return res;
      }
    }
  }
  for (const auto& [key, c] : G.terms()) {
    if (key_degree(key) <= 4) {
      res.passed = false;
      res.detail = "nonzero coefficient of degree <= 4 in G";
      return res;
    }
  }
  return res;
}

CheckResult check_preimage_counts(int n_max) {
  CheckResult res{"preimage counts vs brute force", true, ""};
  const int top = std::min(n_max, 8);
  for (int n = 5; n <= top && res.passed; ++n) {
    const std::vector<HalfPartition> partitions = enumerate_partitions(n);
    for_each_exponent_multiset(n, [&](std::span<const long> k) {
      if (!res.passed) return;
      const SVector s = SVector::from_exponents(k);
      std::map<PkGraph, long> fibers;
      for (const HalfPartition& p : partitions) ++fibers[pk_from_p(PGraph{p}, k)];
      Int total = 0;
      for_each_pk_graph(s, [&](const PkGraph& g) {
        if (!res.passed) return;
        const Int c = count_preimages(g, s);
        total += c;
        auto it = fibers.find(g);
        const long brute = it == fibers.end() ? 0 : it->second;
        if (c != Int(brute)) {
          res.passed = false;
          res.detail = format_case(n, k) + ": preimage formula " + to_string(c) +
                       ", brute force " + std::to_string(brute);
        }
      });
      if (res.passed && total != telephone_number(n)) {
        res.passed = false;
        res.detail = format_case(n, k) + ": preimage sum " + to_string(total) +
                     " != telephone " + to_string(telephone_number(n));
      }
    });
  }
  return res;
}

}  // namespace

namespace {

// Internal consistency guards throw; a thrown check is a failed check.
CheckResult guarded(const std::string& name, const std::function<CheckResult()>& check) {
  try {
    return check();
  } catch (const std::exception& e) {
    return CheckResult{name, false, std::string("exception: ") + e.what()};
  }
}

}  // namespace

VerifyReport run_verification(const VerifyOptions& options) {
  FaultGuard guard(options.inject_multinomial_fault);
  unsigned threads =
      options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  const int genfun_n_max =
      options.genfun_n_max > 0 ? options.genfun_n_max : std::min(options.n_max, 10);

  VerifyReport report;
  report.checks.push_back(guarded("partition counts vs telephone numbers",
                                  [&] { return check_partition_counts(options.n_max); }));
  report.checks.push_back(guarded("three-engine agreement",
                                  [&] { return check_engine_agreement(options.n_max, threads); }));
  report.checks.push_back(guarded("generating-function agreement",
                                  [&] { return check_genfun_agreement(genfun_n_max); }));
  report.checks.push_back(guarded("string equation on F (n_max=10)", check_string_eq));
  report.checks.push_back(guarded("series grading", [&] { return check_grading(genfun_n_max); }));
  report.checks.push_back(guarded("preimage counts vs brute force",
                                  [&] { return check_preimage_counts(options.n_max); }));
  for (const CheckResult& c : report.checks) {
    if (c.passed) {
      ++report.passed;
    } else {
      ++report.failed;
    }
  }
  return report;
}

}  // namespace psihat
