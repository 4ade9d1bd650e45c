#pragma once

#include <map>
#include <string>
#include <vector>

#include "psihat/arith.hpp"
#include "psihat/errors.hpp"
#include "psihat/graphs.hpp"

namespace psihat {

// Exponent vector of a t-monomial, trailing zeros trimmed. Keys compare by
// value; std::map ordering (lexicographic, prefix-first) is also the
// serialization order.
using MonomialKey = std::vector<long>;

long key_degree(const MonomialKey& s);  // sum s_i
long key_weight(const MonomialKey& s);  // sum i * s_i

// Truncated multivariate power series in t_0, t_1, ... over exact
// rationals. Zero coefficients are never stored; every stored key has total
// degree <= n_max.
class FormalSeries {
 public:
  explicit FormalSeries(int n_max) : n_max_(n_max) {}

  int n_max() const { return n_max_; }
  const std::map<MonomialKey, Rat>& terms() const { return terms_; }

  Rat coeff(const MonomialKey& s) const;

  // Adds c * t^s; trims the key, drops the term if its degree exceeds n_max,
  // erases the entry if the coefficient cancels to zero.
  void add(MonomialKey s, const Rat& c);

  bool operator==(const FormalSeries&) const = default;

 private:
  int n_max_;
  std::map<MonomialKey, Rat> terms_;
};

// A multiset of fork operators t_i t_j d/dt_{i+j-1}. (0,0) is excluded:
// d/dt_{-1} annihilates everything.
struct ForkMultiset {
  std::vector<ExponentPair> pairs;  // each (i <= j), sorted

  explicit ForkMultiset(std::vector<ExponentPair> p);
  int size() const { return (int)pairs.size(); }
};

// Genus-0 potential: sum over graded s (weight = degree - 3) of
// t^s/s! * multinomial(|s|-3; exponents), degrees 3..n_max. Includes the
// degree-3 term t_0^3/3!.
FormalSeries build_witten_F(int n_max);

// L = (1/2) sum_{i,j} t_i t_j d/dt_{i+j-1}, truncated to n_max.
FormalSeries apply_L(const FormalSeries& f);

// Weight of a fork multiset inside :exp(-L):, namely
// (-1)^m / (2^d * prod_f j_f!). Mirrors (-1)^m / aut_count of the fork graph
// with the same pairs.
Rat operator_weight(const ForkMultiset& forks);

// :exp(-L): f. For each source monomial, every admissible fork multiset
// differentiates the ORIGINAL monomial simultaneously (normal ordering) and
// then multiplies the t factors back on; iterating apply_L would compute
// L^m instead of :L^m: and is wrong from m = 2 on.
FormalSeries apply_normal_ordered_exp_negL(const FormalSeries& f);

// :exp(-L): F - t_0^3/3! + 2 t_0^3 t_1 / 3!. Requires n_max >= 5; every
// coefficient of total degree <= 4 cancels to zero.
FormalSeries build_G(int n_max);

// s! * coefficient of t^s in g; the integer intersection number. Throws
// EmptyModuliSpaceError for |s| in {3,4}, DimensionMismatchError when s is
// not graded, std::invalid_argument beyond the truncation, and
// std::logic_error if the product is not an integer (an engine bug).
Int intersection_from_G(const FormalSeries& g, const SVector& s);

// Checks dF/dt_0 = t_0^2/2 + sum_i t_{i+1} dF/dt_i on every monomial of
// degree <= n_max - 1 (the window truncation cannot distort).
bool check_string_equation(const FormalSeries& f);

// Byte-stable JSON: [{"s":[...],"num":"...","den":"..."}, ...] sorted by key.
std::string to_json(const FormalSeries& f);

}  // namespace psihat
