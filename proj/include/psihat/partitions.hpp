#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace psihat {

using MarkPair = std::pair<int, int>;  // unordered pair {a,b} stored as a < b

// A partition of the marks {1,...,n} into blocks of size 1 or 2.
struct HalfPartition {
  int n = 0;
  std::vector<MarkPair> pairs;  // sorted lexicographically
  std::vector<int> singletons;  // ascending

  int fork_count() const { return (int)pairs.size(); }
  int block_count() const { return n - fork_count(); }

  bool operator==(const HalfPartition&) const = default;
};

// Visits every HalfPartition of [n] exactly once.
//
// Order (documented, relied on by golden tests): partitions are sorted by
// their pair list, compared lexicographically, so the all-singletons
// partition comes first, then all partitions whose first pair is {1,2}, and
// so on. For n = 3 the stream is
//   {1}{2}{3}; {1,2}{3}; {1,3}{2}; {2,3}{1}.
void for_each_partition(int n, const std::function<void(const HalfPartition&)>& visit);

// Sub-stream of for_each_partition: only the partitions whose
// lexicographically smallest pair is `first`. Visiting the all-singletons
// partition and then these sub-streams over all `first` in ascending order
// reproduces for_each_partition exactly; the engines use that split to fan
// the sum out across threads without changing the stream.
void for_each_partition_with_first_pair(int n, MarkPair first,
                                        const std::function<void(const HalfPartition&)>& visit);

std::vector<HalfPartition> enumerate_partitions(int n);

// One term of the reduced sum: disjoint pairs and single marks chosen inside
// [r] (the marks with nonzero exponent), everything else implicit.
//   full_pairs  -- pairs with both exponents nonzero
//   half_forks  -- marks kept from a pair whose partner had exponent zero
//   complement  -- [r] minus all selected marks
struct ReducedSelection {
  int n = 0;
  int r = 0;
  std::vector<MarkPair> full_pairs;
  std::vector<int> half_forks;
  std::vector<int> complement;

  int t() const { return 2 * (int)full_pairs.size(); }
  int s() const { return (int)half_forks.size() + t(); }
  int fork_count() const { return (int)full_pairs.size() + (int)half_forks.size(); }

  bool operator==(const ReducedSelection&) const = default;
};

// Visits every family of disjoint pairs and singletons inside [r] with at
// most floor(n/2) blocks. Selections whose half-fork count exceeds the
// number of zero-exponent marks are visited too; their multiplicity factor
// falling_factorial(n-r, ...) vanishes, so enumeration stays uniform.
//
// Order: recursion on the smallest undecided mark, branches in the order
// complement / half-fork / pair with each larger mark ascending.
void for_each_reduced_selection(int n, int r,
                                const std::function<void(const ReducedSelection&)>& visit);

// Requires k sorted so that all nonzero exponents come first.
std::vector<ReducedSelection> enumerate_reduced(int n, std::span<const long> k);

// Drops singletons of p; keeps a pair as a full pair when both members have
// nonzero exponent, collapses it to a half-fork retaining the nonzero member
// when exactly one does, and drops it when neither does.
// Requires k sorted nonzero-first (so the result lives inside [r]).
ReducedSelection project_to_reduced(const HalfPartition& p, std::span<const long> k);

}  // namespace psihat
