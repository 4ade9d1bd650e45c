#include "psihat/arith.hpp"

#include <atomic>
#include <stdexcept>
#include <vector>

namespace psihat {

namespace {

std::atomic<bool> g_multinomial_fault{false};

// Memo tables are thread_local: concurrent engine workers each keep their
// own copy instead of contending on a lock (the tables stay tiny at desk
// scale).
const Int& factorial_ref(unsigned long n) {
  thread_local std::vector<Int> table{Int(1)};
  while (table.size() <= n) {
    table.push_back(table.back() * (unsigned long)table.size());
  }
  return table[n];
}

const Int& telephone_ref(unsigned long n) {
  thread_local std::vector<Int> table{Int(1), Int(1)};
  while (table.size() <= n) {
    const std::size_t m = table.size();
    table.push_back(table[m - 1] + (unsigned long)(m - 1) * table[m - 2]);
  }
  return table[n];
}

}  // namespace

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Int factorial(unsigned long n) { return factorial_ref(n); }

Int multinomial(long total, std::span<const long> parts) {
  if (total < 0) return 0;
  long sum = 0;
  for (long p : parts) {
    if (p < 0) return 0;
    sum += p;
  }
  if (sum != total) return 0;
  Int den = 1;
  for (long p : parts) {
    if (p > 1) den *= factorial_ref((unsigned long)p);
  }
  Int result;
  mpz_divexact(result.get_mpz_t(), factorial_ref((unsigned long)total).get_mpz_t(),
               den.get_mpz_t());
  if (g_multinomial_fault.load(std::memory_order_relaxed)) result += 1;
  return result;
}

Int falling_factorial(long a, long b) {
  if (a < 0 || b < 0) throw std::invalid_argument("falling_factorial requires a, b >= 0");
  if (b > a) return 0;
  Int result = 1;
  for (long i = 0; i < b; ++i) result *= (unsigned long)(a - i);
  return result;
}

Int telephone_number(unsigned long n) { return telephone_ref(n); }

std::string to_string(const Int& v) { return v.get_str(); }

std::string to_string(const Rat& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

void inject_multinomial_fault(bool enabled) {
  g_multinomial_fault.store(enabled, std::memory_order_relaxed);
}

bool multinomial_fault_injected() {
  return g_multinomial_fault.load(std::memory_order_relaxed);
}

}  // namespace psihat
