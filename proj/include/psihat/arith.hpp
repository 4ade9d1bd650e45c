#pragma once

#include <gmpxx.h>

#include <span>
#include <string>

namespace psihat {

// Exact arbitrary-precision integer and rational. Every numeric result in
// the library is one of these; no floating point anywhere.
using Int = mpz_class;
using Rat = mpq_class;

// Rational in lowest terms with positive denominator.
Rat make_rat(const Int& num, const Int& den);

// n!, memoized. Safe to call from several threads.
Int factorial(unsigned long n);

// total! / (parts[0]! ... parts[m-1]!).
//
// Returns 0 when any part is negative, when total < 0, or when the parts do
// not sum to total ("a negative power of a psi class is 0"); degenerate
// inputs are values, not errors, so summation loops never need to filter.
Int multinomial(long total, std::span<const long> parts);

// a (a-1) ... (a-b+1); 1 when b == 0; 0 when b > a. Requires a, b >= 0.
Int falling_factorial(long a, long b);

// Number of partitions of [n] into blocks of size <= 2:
// T(n) = T(n-1) + (n-1) T(n-2), T(0) = T(1) = 1. Memoized.
Int telephone_number(unsigned long n);

std::string to_string(const Int& v);
std::string to_string(const Rat& v);

// Test instrumentation: when enabled, multinomial() returns value+1 so that
// downstream verification suites can prove they detect a broken core.
void inject_multinomial_fault(bool enabled);
bool multinomial_fault_injected();

}  // namespace psihat
