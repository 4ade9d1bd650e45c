#include "psihat/partitions.hpp"

#include <algorithm>
#include <stdexcept>

namespace psihat {

namespace {

// `avail` stays sorted ascending throughout.
void visit_matchings(int n, std::vector<int>& avail, MarkPair last,
                     std::vector<MarkPair>& pairs,
                     const std::function<void(const HalfPartition&)>& visit) {
  visit(HalfPartition{n, pairs, avail});
  for (std::size_t i = 0; i < avail.size(); ++i) {
    for (std::size_t j = i + 1; j < avail.size(); ++j) {
      const MarkPair p{avail[i], avail[j]};
      if (p <= last) continue;
      std::vector<int> rest;
      rest.reserve(avail.size() - 2);
      for (std::size_t t = 0; t < avail.size(); ++t) {
        if (t != i && t != j) rest.push_back(avail[t]);
      }
      pairs.push_back(p);
      visit_matchings(n, rest, p, pairs, visit);
      pairs.pop_back();
    }
  }
}

}  // namespace

void for_each_partition(int n, const std::function<void(const HalfPartition&)>& visit) {
  if (n < 1) throw std::invalid_argument("for_each_partition requires n >= 1");
  std::vector<int> avail(n);
  for (int i = 0; i < n; ++i) avail[i] = i + 1;
  std::vector<MarkPair> pairs;
  visit_matchings(n, avail, MarkPair{0, 0}, pairs, visit);
}

void for_each_partition_with_first_pair(int n, MarkPair first,
                                        const std::function<void(const HalfPartition&)>& visit) {
  if (n < 1) throw std::invalid_argument("for_each_partition requires n >= 1");
  if (first.first < 1 || first.second <= first.first || first.second > n)
    throw std::invalid_argument("invalid first pair");
  std::vector<int> avail;
  avail.reserve(n - 2);
  for (int i = 1; i <= n; ++i) {
    if (i != first.first && i != first.second) avail.push_back(i);
  }
  std::vector<MarkPair> pairs{first};
  visit_matchings(n, avail, first, pairs, visit);
}

std::vector<HalfPartition> enumerate_partitions(int n) {
  std::vector<HalfPartition> out;
  for_each_partition(n, [&](const HalfPartition& p) { out.push_back(p); });
  return out;
}

namespace {

struct ReducedEnum {
  int n;
  int r;
  int max_blocks;  // floor(n/2)
  const std::function<void(const ReducedSelection&)>* visit;
  std::vector<char> decided;  // 1-based over [r]
  std::vector<MarkPair> pairs;
  std::vector<int> half_forks;
  std::vector<int> complement;

  void run() {
    recurse(1);
  }

  void recurse(int mark) {
    while (mark <= r && decided[mark]) ++mark;
    if (mark > r) {
      ReducedSelection sel;
      sel.n = n;
      sel.r = r;
      sel.full_pairs = pairs;
      sel.half_forks = half_forks;
      sel.complement = complement;
      std::sort(sel.complement.begin(), sel.complement.end());
      (*visit)(sel);
      return;
    }
    decided[mark] = 1;

    complement.push_back(mark);
    recurse(mark + 1);
    complement.pop_back();

    if ((int)pairs.size() + (int)half_forks.size() < max_blocks) {
      half_forks.push_back(mark);
      recurse(mark + 1);
      half_forks.pop_back();

      for (int j = mark + 1; j <= r; ++j) {
        if (decided[j]) continue;
        decided[j] = 1;
        pairs.push_back({mark, j});
        recurse(mark + 1);
        pairs.pop_back();
        decided[j] = 0;
      }
    }

    decided[mark] = 0;
  }
};

}  // namespace

void for_each_reduced_selection(int n, int r,
                                const std::function<void(const ReducedSelection&)>& visit) {
  if (r < 0 || r > n) throw std::invalid_argument("invalid nonzero-exponent count");
  ReducedEnum e;
  e.n = n;
  e.r = r;
  e.max_blocks = n / 2;
  e.visit = &visit;
  e.decided.assign(r + 1, 0);
  e.run();
}

namespace {

int nonzero_prefix_length(std::span<const long> k) {
  std::size_t r = 0;
  while (r < k.size() && k[r] != 0) ++r;
  for (std::size_t i = r; i < k.size(); ++i) {
    if (k[i] != 0) throw std::invalid_argument("exponents must be sorted nonzero-first");
  }
  return (int)r;
}

}  // namespace

std::vector<ReducedSelection> enumerate_reduced(int n, std::span<const long> k) {
  if ((int)k.size() != n) throw std::invalid_argument("exponent vector length must equal n");
  const int r = nonzero_prefix_length(k);
  std::vector<ReducedSelection> out;
  for_each_reduced_selection(n, r, [&](const ReducedSelection& s) { out.push_back(s); });
  return out;
}

ReducedSelection project_to_reduced(const HalfPartition& p, std::span<const long> k) {
  if ((int)k.size() != p.n) throw std::invalid_argument("exponent vector length must equal n");
  const int r = nonzero_prefix_length(k);
  ReducedSelection sel;
  sel.n = p.n;
  sel.r = r;
  std::vector<char> used(r + 1, 0);
  for (const MarkPair& pr : p.pairs) {
    const bool a_nz = k[pr.first - 1] != 0;
    const bool b_nz = k[pr.second - 1] != 0;
    if (a_nz && b_nz) {
      sel.full_pairs.push_back(pr);
      used[pr.first] = used[pr.second] = 1;
    } else if (a_nz) {
      sel.half_forks.push_back(pr.first);
      used[pr.first] = 1;
    } else if (b_nz) {
      sel.half_forks.push_back(pr.second);
      used[pr.second] = 1;
    }
  }
  std::sort(sel.full_pairs.begin(), sel.full_pairs.end());
  std::sort(sel.half_forks.begin(), sel.half_forks.end());
  for (int m = 1; m <= r; ++m) {
    if (!used[m]) sel.complement.push_back(m);
  }
  return sel;
}

}  // namespace psihat
