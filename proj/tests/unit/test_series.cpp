#include "doctest.h"

#include "psihat/intersections.hpp"
#include "psihat/series.hpp"
#include "psihat/verify.hpp"

using namespace psihat;

namespace {

Rat rat(long num, long den) { return make_rat(Int(num), Int(den)); }

}  // namespace

TEST_SUITE("series") {

TEST_CASE("witten potential spot checks") {
  const FormalSeries F = build_witten_F(7);
  CHECK(F.coeff({3}) == rat(1, 6));        // t0^3/3!
  CHECK(F.coeff({3, 1}) == rat(1, 6));     // 1 * t0^3 t1 / 3!
  CHECK(F.coeff({4, 0, 1}) == rat(1, 24)); // 1 * t0^4 t2 / 4!
  CHECK(F.coeff({3, 2}) == rat(1, 6));     // 2 * t0^3 t1^2 / (3! 2!)
  CHECK(F.coeff({5, 0, 0, 1}) == rat(1, 120));
  CHECK(F.coeff({4, 1, 1}) == rat(1, 8));  // 3 * t0^4 t1 t2 / 4!
  CHECK(F.coeff({3, 3}) == rat(1, 6));     // 6 * t0^3 t1^3 / (3! 3!)
  CHECK(F.coeff({2}) == 0);
  CHECK(F.coeff({4}) == 0);  // ungraded
}

TEST_CASE("witten potential is graded") {
  const FormalSeries F = build_witten_F(9);
  for (const auto& [key, c] : F.terms()) {
    CHECK(key_weight(key) == key_degree(key) - 3);
    CHECK(c != 0);
  }
}

TEST_CASE("apply_L basics") {
  FormalSeries f(6);
  f.add({3}, rat(1, 6));
  const FormalSeries Lf = apply_L(f);
  CHECK(Lf.coeff({3, 1}) == rat(1, 2));  // both (0,1) orderings act via d/dt0
  CHECK(Lf.terms().size() == 1);

  FormalSeries constant(6);
  constant.add({}, Rat(1));
  CHECK(apply_L(constant).terms().empty());
}

TEST_CASE("apply_L preserves grading") {
  const FormalSeries F = build_witten_F(8);
  const FormalSeries Lf = apply_L(F);
  for (const auto& [key, c] : Lf.terms()) {
    CHECK(key_weight(key) == key_degree(key) - 3);
  }
}

TEST_CASE("normal ordering: identity and first order") {
  // truncating right above the source degree forces m <= 1, where
  // :exp(-L): = 1 - L exactly
  const FormalSeries F = build_witten_F(7);
  for (const auto& [key, c] : F.terms()) {
    FormalSeries single((int)key_degree(key) + 1);
    single.add(key, c);
    FormalSeries reference((int)key_degree(key) + 1);
    reference.add(key, c);
    const FormalSeries Ls = apply_L(single);
    for (const auto& [k2, c2] : Ls.terms()) reference.add(k2, -c2);
    CHECK(apply_normal_ordered_exp_negL(single) == reference);
  }
}

TEST_CASE("normal ordering differs from iterated L at order two") {
  // on t0^3, two (0,1)-forks acting simultaneously give falling(3,2) = 6,
  // while L(L(t0^3)) would differentiate the freshly multiplied t0 again
  FormalSeries f(5);
  f.add({3}, rat(1, 6));
  const FormalSeries hat = apply_normal_ordered_exp_negL(f);
  CHECK(hat.coeff({3}) == rat(1, 6));       // m = 0
  CHECK(hat.coeff({3, 1}) == rat(-1, 2));   // m = 1
  CHECK(hat.coeff({3, 2}) == rat(1, 2));    // m = 2: (1/2!) * 6 * 1/6
  const FormalSeries LL = apply_L(apply_L(f));
  CHECK(LL.coeff({3, 2}) == rat(7, 4));     // L^2/2! would give 7/8, not 1/2
}

TEST_CASE("worked coefficient: t0^3 t1^2") {
  const FormalSeries hatF = apply_normal_ordered_exp_negL(build_witten_F(5));
  CHECK(hatF.coeff({3, 2}) == rat(1, 12));  // 1/6 - 1/2 - 1/12 + 1/2
  CHECK(hatF.coeff({3}) == rat(1, 6));
  CHECK(hatF.coeff({3, 1}) == rat(-1, 3));
}

TEST_CASE("operator weight mirrors graph automorphisms") {
  // spot checks; the acceptance suite sweeps every multiset with m <= 4
  ForkMultiset empty({});
  CHECK(operator_weight(empty) == Rat(1));
  ForkMultiset one({{0, 1}});
  CHECK(operator_weight(one) == rat(-1, 1));
  ForkMultiset diag({{1, 1}});
  CHECK(operator_weight(diag) == rat(-1, 2));
  ForkMultiset mixed({{1, 1}, {1, 1}, {1, 2}});
  CHECK(operator_weight(mixed) == rat(-1, 8));
  CHECK_THROWS_AS(ForkMultiset({{0, 0}}), std::invalid_argument);
}

TEST_CASE("G vanishes through degree four") {
  const FormalSeries G = build_G(7);
  for (const auto& [key, c] : G.terms()) {
    CHECK(key_degree(key) >= 5);
    CHECK(key_weight(key) == key_degree(key) - 3);
  }
  CHECK(G.coeff({3}) == 0);
  CHECK(G.coeff({3, 1}) == 0);
}

TEST_CASE("G coefficients") {
  const FormalSeries G = build_G(8);
  CHECK(G.coeff({4, 0, 1}) == rat(-1, 8));
  CHECK(G.coeff({5, 0, 0, 1}) == rat(-1, 30));
  CHECK(G.coeff({5, 1, 2}) == rat(19, 240));
}

TEST_CASE("intersection numbers from G") {
  const FormalSeries G = build_G(8);
  auto sv = [](std::vector<long> k) { return SVector::from_exponents(k); };
  CHECK(intersection_from_G(G, sv({2, 0, 0, 0, 0})) == -3);
  CHECK(intersection_from_G(G, sv({1, 1, 0, 0, 0})) == 1);
  CHECK(intersection_from_G(G, sv({1, 1, 1, 0, 0, 0})) == 3);
  CHECK(intersection_from_G(G, sv({2, 2, 1, 0, 0, 0, 0, 0})) == 19);

  CHECK_THROWS_AS(intersection_from_G(G, sv({0, 0, 0})), EmptyModuliSpaceError);
  CHECK_THROWS_AS(intersection_from_G(G, sv({1, 0, 0, 0})), EmptyModuliSpaceError);
  SVector ungraded;
  ungraded.counts = {4, 1, 0, 1};  // weight 4, degree 6
  CHECK_THROWS_AS(intersection_from_G(G, ungraded), DimensionMismatchError);
  SVector beyond;
  beyond.counts = {3, 9};  // graded, but 12 marks > truncation
  CHECK_THROWS_AS(intersection_from_G(G, beyond), std::invalid_argument);
}

TEST_CASE("G agrees with the direct engine") {
  const FormalSeries G = build_G(8);
  for (int n = 5; n <= 8; ++n) {
    for_each_exponent_multiset(n, [&](std::span<const long> k) {
      const Int direct = integrate_direct(PsiHatMonomial(n, {k.begin(), k.end()}));
      CHECK(intersection_from_G(G, SVector::from_exponents(k)) == direct);
    });
  }
}

TEST_CASE("string equation") {
  CHECK(check_string_equation(build_witten_F(5)));
  CHECK(check_string_equation(build_witten_F(10)));

  FormalSeries perturbed = build_witten_F(6);
  perturbed.add({3, 1}, rat(1, 60));
  CHECK_FALSE(check_string_equation(perturbed));
}

TEST_CASE("json serialization") {
  FormalSeries f(5);
  f.add({3, 1}, rat(1, 6));
  f.add({3}, rat(1, 6));
  const std::string json = to_json(f);
  CHECK(json == "[{\"s\":[3],\"num\":\"1\",\"den\":\"6\"},"
                "{\"s\":[3,1],\"num\":\"1\",\"den\":\"6\"}]");
  CHECK(to_json(build_witten_F(7)) == to_json(build_witten_F(7)));
}

TEST_CASE("series add prunes zeros and trims keys") {
  FormalSeries f(6);
  f.add({3, 0, 0}, Rat(1));
  CHECK(f.coeff({3}) == Rat(1));
  f.add({3}, Rat(-1));
  CHECK(f.terms().empty());
  f.add({7}, Rat(1));  // beyond truncation
  CHECK(f.terms().empty());
}

}  // TEST_SUITE
