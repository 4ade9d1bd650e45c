#include "doctest.h"

#include <random>

#include "psihat/intersections.hpp"
#include "psihat/verify.hpp"
#include "../oracles.hpp"

using namespace psihat;

namespace {

Int direct_of(int n, std::vector<long> k) { return integrate_direct(PsiHatMonomial(n, std::move(k))); }

}  // namespace

TEST_SUITE("intersections") {

TEST_CASE("expand_class degenerate cases") {
  // all exponents zero: only the fork-free stratum survives
  auto terms = expand_class(PsiHatMonomial(5, {0, 0, 0, 0, 0}));
  REQUIRE(terms.size() == 1);
  CHECK(terms[0].sign == 1);
  CHECK(terms[0].graph.fork_count() == 0);
  CHECK(terms[0].fork_node_exponents.empty());

  CHECK_THROWS_WITH_AS(expand_class(PsiHatMonomial(4, {0, 0, 0, 0})), "theorem requires n >= 5",
                       DomainError);
}

TEST_CASE("expand_class for one square") {
  auto terms = expand_class(PsiHatMonomial(5, {2, 0, 0, 0, 0}));
  REQUIRE(terms.size() == 5);
  CHECK(terms[0].graph.fork_count() == 0);
  CHECK(terms[0].center_leg_exponents.at(1) == 2);
  int negative = 0;
  for (const auto& t : terms) {
    if (t.sign == -1) {
      ++negative;
      REQUIRE(t.graph.fork_count() == 1);
      const MarkPair pr = t.graph.partition.pairs[0];
      CHECK(pr.first == 1);  // every surviving fork contains mark 1
      CHECK(t.fork_node_exponents.at(pr) == 1);
    }
  }
  CHECK(negative == 4);
}

TEST_CASE("expand_class term count for three ones") {
  auto terms = expand_class(PsiHatMonomial(6, {1, 1, 1, 0, 0, 0}));
  CHECK(terms.size() == 46);
}

TEST_CASE("class expansion sums to the integral") {
  for (int n = 5; n <= 7; ++n) {
    for_each_exponent_multiset(n, [&](std::span<const long> kk) {
      const std::vector<long> k(kk.begin(), kk.end());
      const PsiHatMonomial m(n, k);
      Int total = 0;
      for (const auto& t : expand_class(m)) {
        std::vector<long> parts;
        for (const auto& [pr, e] : t.fork_node_exponents) parts.push_back(e);
        for (const auto& [mark, e] : t.center_leg_exponents) parts.push_back(e);
        total += Int(t.sign) * multinomial(t.graph.partition.block_count() - 3, parts);
      }
      CHECK(total == integrate_direct(m));
    });
  }
}

TEST_CASE("frozen values") {
  CHECK(direct_of(5, {2, 0, 0, 0, 0}) == -3);
  CHECK(direct_of(5, {1, 1, 0, 0, 0}) == 1);
  CHECK(direct_of(6, {1, 1, 1, 0, 0, 0}) == 3);
  CHECK(direct_of(6, {3, 0, 0, 0, 0, 0}) == -4);
  CHECK(direct_of(7, {4, 0, 0, 0, 0, 0, 0}) == -5);
  CHECK(direct_of(7, {2, 2, 0, 0, 0, 0, 0}) == 15);
  CHECK(direct_of(7, {2, 1, 1, 0, 0, 0, 0}) == 7);
  CHECK(direct_of(7, {3, 1, 0, 0, 0, 0, 0}) == 3);
  CHECK(direct_of(7, {1, 1, 1, 1, 0, 0, 0}) == 6);
  CHECK(direct_of(8, {2, 2, 1, 0, 0, 0, 0, 0}) == 19);
  CHECK(direct_of(8, {1, 1, 1, 1, 1, 0, 0, 0}) == 0);
  CHECK(integrate_pk(PsiHatMonomial(8, {5, 0, 0, 0, 0, 0, 0, 0})) == -6);
  CHECK(direct_of(9, {2, 2, 2, 0, 0, 0, 0, 0, 0}) == -48);
  CHECK(direct_of(9, {3, 2, 1, 0, 0, 0, 0, 0, 0}) == 41);
  CHECK(direct_of(10, {2, 2, 2, 1, 0, 0, 0, 0, 0, 0}) == -330);
}

TEST_CASE("error taxonomy") {
  CHECK_THROWS_AS(integrate_direct(PsiHatMonomial(3, {0, 0, 0})), EmptyModuliSpaceError);
  CHECK_THROWS_AS(integrate_direct(PsiHatMonomial(4, {1, 0, 0, 0})), EmptyModuliSpaceError);
  CHECK_THROWS_AS(integrate_direct(PsiHatMonomial(5, {1, 0, 0, 0, 0})), DimensionMismatchError);
  CHECK_THROWS_AS(integrate_direct(PsiHatMonomial(2, {0, 0})), DimensionMismatchError);
  CHECK_THROWS_AS(integrate_reduced(PsiHatMonomial(4, {1, 0, 0, 0})), EmptyModuliSpaceError);
  CHECK_THROWS_AS(integrate_pk(PsiHatMonomial(5, {3, 0, 0, 0, 0})), DimensionMismatchError);
  CHECK_THROWS_AS(PsiHatMonomial(5, {-1, 3, 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("three engines agree with the literal sums") {
  for (int n = 5; n <= 10; ++n) {
    for_each_exponent_multiset(n, [&](std::span<const long> kk) {
      const std::vector<long> k(kk.begin(), kk.end());
      const PsiHatMonomial m(n, k);
      const Int direct = integrate_direct(m);
      CHECK(direct == oracles::direct_sum(n, k));
      CHECK(integrate_reduced(m) == direct);
      CHECK(integrate_pk(m) == direct);
      CHECK(oracles::reduced_sum(n, k) == direct);
      CHECK(oracles::pk_sum(n, k) == direct);
    });
  }
}

TEST_CASE("labeled and grouped reduced sums coincide") {
  for (int n = 5; n <= 9; ++n) {
    for_each_exponent_multiset(n, [&](std::span<const long> kk) {
      const PsiHatMonomial m(n, {kk.begin(), kk.end()});
      CHECK(detail::integrate_reduced_labeled(m) == detail::integrate_reduced_grouped(m));
    });
  }
  // wider selections: ten and nine nonzero exponents
  std::vector<long> wide(14, 0);
  for (int i = 0; i < 9; ++i) wide[i] = 1;
  wide[9] = 2;
  const PsiHatMonomial w(14, wide);
  CHECK(detail::integrate_reduced_labeled(w) == detail::integrate_reduced_grouped(w));

  std::vector<long> spread(20, 0);
  long vals[] = {3, 3, 2, 2, 2, 2, 1, 1, 1};
  for (int i = 0; i < 9; ++i) spread[i] = vals[i];
  const PsiHatMonomial sp(20, spread);
  CHECK(detail::integrate_reduced_labeled(sp) == detail::integrate_reduced_grouped(sp));
  CHECK(integrate_pk(sp) == detail::integrate_reduced_grouped(sp));
}

TEST_CASE("one-psihat family") {
  for (int n = 5; n <= 10; ++n) {
    std::vector<long> k(n, 0);
    k[0] = n - 3;
    CHECK(direct_of(n, k) == Int(2 - n));
  }
}

TEST_CASE("permutation invariance") {
  std::mt19937 rng(3);
  std::vector<long> base{2, 1, 1, 0, 0, 0, 0};
  const Int expect = direct_of(7, base);
  for (int trial = 0; trial < 6; ++trial) {
    std::shuffle(base.begin(), base.end(), rng);
    const PsiHatMonomial m(7, base);
    CHECK(integrate_direct(m) == expect);
    CHECK(integrate_reduced(m) == expect);
    CHECK(integrate_pk(m) == expect);
  }
}

TEST_CASE("thread fan-out does not change the value") {
  const PsiHatMonomial m(9, {3, 2, 1, 0, 0, 0, 0, 0, 0});
  const Int sequential = integrate_direct(m, 1);
  CHECK(integrate_direct(m, 2) == sequential);
  CHECK(integrate_direct(m, 5) == sequential);
  CHECK(integrate_direct(m, 0) == sequential);
}

TEST_CASE("plain psi integrals") {
  CHECK(psi_integral_m0n(3, std::vector<long>{0, 0, 0}) == 1);
  CHECK(psi_integral_m0n(5, std::vector<long>{1, 1, 0, 0, 0}) == 2);
  CHECK(psi_integral_m0n(6, std::vector<long>{1, 1, 1, 0, 0, 0}) == 6);
  CHECK_THROWS_AS(psi_integral_m0n(5, std::vector<long>{1, 0, 0, 0, 0}), DimensionMismatchError);
  CHECK_THROWS_AS(psi_integral_m0n(2, std::vector<long>{0, 0}), DimensionMismatchError);
}

TEST_CASE("plain psi integrals satisfy the string recurrence") {
  // with total n-2 and a zero appended at mark n+1, the integral equals the
  // sum of the n-mark integrals with one exponent decremented
  std::mt19937 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 4 + (int)(rng() % 5);
    std::vector<long> k(n, 0);
    long left = n - 2;
    for (int i = 0; i + 1 < n; ++i) {
      const long v = (long)(rng() % (left + 1));
      k[i] = v;
      left -= v;
    }
    k[n - 1] = left;
    std::vector<long> extended = k;
    extended.push_back(0);
    const Int lhs = psi_integral_m0n(n + 1, extended);
    Int rhs = 0;
    for (int j = 0; j < n; ++j) {
      if (k[j] == 0) continue;
      std::vector<long> dec = k;
      --dec[j];
      rhs += psi_integral_m0n(n, dec);
    }
    CHECK(lhs == rhs);
  }
}

}  // TEST_SUITE
