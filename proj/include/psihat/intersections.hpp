#pragma once

#include <map>
#include <span>
#include <vector>

#include "psihat/arith.hpp"
#include "psihat/errors.hpp"
#include "psihat/graphs.hpp"
#include "psihat/partitions.hpp"

namespace psihat {

// The integrand psihat_1^{k_1} ... psihat_n^{k_n}.
struct PsiHatMonomial {
  int n = 0;
  std::vector<long> k;

  PsiHatMonomial(int n_, std::vector<long> k_);

  long degree() const;  // sum of exponents
};

// One summand of the class-level expansion: a signed boundary stratum
// decorated with psi powers on the central half-edges and on the fork nodes.
struct StratumClassTerm {
  int sign = 1;  // (-1)^{fork count}
  PGraph graph;
  std::map<int, long> center_leg_exponents;       // mark -> k_mark
  std::map<MarkPair, long> fork_node_exponents;   // fork {a,b} -> k_a + k_b - 1
};

// Expands the psihat monomial as a signed sum of decorated boundary strata,
// one term per partition whose fork exponents are all nonnegative (the rest
// are zero classes and are dropped). Requires n >= 5; the degree of the
// monomial is unconstrained.
std::vector<StratumClassTerm> expand_class(const PsiHatMonomial& m);

// Throws EmptyModuliSpaceError for n in {3,4} and DimensionMismatchError
// when n < 3 or the exponents do not sum to n - 3.
void require_top_intersection(const PsiHatMonomial& m);

// Top intersection engines. All enforce require_top_intersection. The three
// are independent evaluation routes of the same number and are
// cross-checked against each other in the test suites.

// Signed sum over all partitions of [n] into blocks of size <= 2. `threads`
// fans the partition stream out across workers (0 = hardware concurrency);
// the result does not depend on the thread count.
Int integrate_direct(const PsiHatMonomial& m, unsigned threads = 1);

// Signed sum over reduced selections inside the nonzero-exponent marks, the
// dropped zero-exponent choices folded into a falling-factorial multiplicity.
Int integrate_reduced(const PsiHatMonomial& m);

// Signed sum over fork graphs at exponent level, each weighted by its
// preimage count.
Int integrate_pk(const PsiHatMonomial& m);

// Plain psi integral on the moduli of n-pointed rational curves:
// multinomial(n-3; k). Requires n >= 3, k >= 0, sum(k) = n - 3.
Int psi_integral_m0n(int n, std::span<const long> k);

namespace detail {
// The two evaluation strategies behind integrate_reduced, exposed so tests
// can pin them against each other on the ranges where both run.
Int integrate_reduced_labeled(const PsiHatMonomial& m);
Int integrate_reduced_grouped(const PsiHatMonomial& m);
}  // namespace detail

}  // namespace psihat
