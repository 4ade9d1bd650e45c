#include "psihat/intersections.hpp"

#include <algorithm>
#include <future>
#include <stdexcept>
#include <thread>

namespace psihat {

PsiHatMonomial::PsiHatMonomial(int n_, std::vector<long> k_) : n(n_), k(std::move(k_)) {
  if (n < 1) throw std::invalid_argument("need at least one mark");
  if ((int)k.size() != n) throw std::invalid_argument("exponent vector length must equal n");
  for (long v : k) {
    if (v < 0) throw std::invalid_argument("exponents must be nonnegative");
  }
}

long PsiHatMonomial::degree() const {
  long d = 0;
  for (long v : k) d += v;
  return d;
}

void require_top_intersection(const PsiHatMonomial& m) {
  if (m.n == 3 || m.n == 4) throw EmptyModuliSpaceError();
  if (m.n < 3 || m.degree() != (long)m.n - 3) throw DimensionMismatchError();
}

namespace {

// Summand of the partition sum: (-1)^{|F|} multinomial(n-|F|-3; fork and
// singleton exponents).
Int partition_term(const HalfPartition& p, const std::vector<long>& k) {
  std::vector<long> parts;
  parts.reserve(p.n - p.fork_count());
  for (const MarkPair& pr : p.pairs) {
    parts.push_back(k[pr.first - 1] + k[pr.second - 1] - 1);
  }
  for (int s : p.singletons) parts.push_back(k[s - 1]);
  Int value = multinomial(p.block_count() - 3, parts);
  if (p.fork_count() % 2 != 0) value = -value;
  return value;
}

}  // namespace

std::vector<StratumClassTerm> expand_class(const PsiHatMonomial& m) {
  if (m.n < 5) throw DomainError("theorem requires n >= 5");
  std::vector<StratumClassTerm> terms;
  for_each_partition(m.n, [&](const HalfPartition& p) {
    StratumClassTerm term;
    term.sign = (p.fork_count() % 2 == 0) ? 1 : -1;
    for (const MarkPair& pr : p.pairs) {
      const long e = m.k[pr.first - 1] + m.k[pr.second - 1] - 1;
      if (e < 0) return;  // zero class, dropped
      term.fork_node_exponents[pr] = e;
    }
    for (int s : p.singletons) term.center_leg_exponents[s] = m.k[s - 1];
    term.graph = PGraph{p};
    terms.push_back(std::move(term));
  });
  return terms;
}

Int integrate_direct(const PsiHatMonomial& m, unsigned threads) {
  require_top_intersection(m);
  const int n = m.n;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  if (threads <= 1) {
    Int acc = 0;
    for_each_partition(n, [&](const HalfPartition& p) { acc += partition_term(p, m.k); });
    return acc;
  }

  // All-singletons partition, then one branch per lexicographically smallest
  // pair. Integer addition is associative, so the fan-out cannot change the
  // result.
  std::vector<MarkPair> branches;
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) branches.push_back({a, b});
  }
  const unsigned groups = std::min<unsigned>(threads, (unsigned)branches.size());
  std::vector<std::future<Int>> futures;
  futures.reserve(groups);
  for (unsigned g = 0; g < groups; ++g) {
    futures.push_back(std::async(std::launch::async, [&, g]() {
      Int local = 0;
      for (std::size_t i = g; i < branches.size(); i += groups) {
        for_each_partition_with_first_pair(
            n, branches[i], [&](const HalfPartition& p) { local += partition_term(p, m.k); });
      }
      return local;
    }));
  }
  HalfPartition all_singletons;
  all_singletons.n = n;
  for (int i = 1; i <= n; ++i) all_singletons.singletons.push_back(i);
  Int acc = partition_term(all_singletons, m.k);
  for (auto& f : futures) acc += f.get();
  return acc;
}

namespace {

std::vector<long> sorted_exponents(const PsiHatMonomial& m) {
  std::vector<long> ks = m.k;
  std::sort(ks.begin(), ks.end(), std::greater<long>());
  return ks;
}

// Number of reduced selections inside [r]; decides when the labeled stream
// is still desk-scale.
double selection_count_estimate(int r) {
  double a0 = 1, a1 = 2;
  if (r == 0) return 1;
  for (int i = 2; i <= r; ++i) {
    double a2 = 2 * a1 + (i - 1) * a0;
    a0 = a1;
    a1 = a2;
  }
  return a1;
}

Int reduced_labeled_sum(int n, const std::vector<long>& ks, int r) {
  Int acc = 0;
  std::vector<long> parts;
  for_each_reduced_selection(n, r, [&](const ReducedSelection& sel) {
    const int s = sel.s();
    const int t = sel.t();
    parts.clear();
    for (const MarkPair& pr : sel.full_pairs) {
      parts.push_back(ks[pr.first - 1] + ks[pr.second - 1] - 1);
    }
    for (int a : sel.half_forks) parts.push_back(ks[a - 1] - 1);
    for (int c : sel.complement) parts.push_back(ks[c - 1]);
    Int term = falling_factorial(n - r, s - t) * multinomial(n - 3 - (s - t / 2), parts);
    if ((s + t / 2) % 2 != 0) term = -term;
    acc += term;
  });
  return acc;
}

// Value-level regrouping of the same sum: selections are grouped by the
// multiset of exponent values on the pairs and half-forks, each group
// weighted by the number of labeled selections realizing it. The running
// numerator/denominator products live on depth-indexed stacks so descending
// one level costs a handful of word-sized gmp operations and no allocation
// in steady state.
class GroupedReducedSum {
 public:
  GroupedReducedSum(int n, const std::vector<long>& ks, int r) : n_(n), r_(r) {
    for (int i = 0; i < r;) {
      int j = i;
      while (j < r && ks[j] == ks[i]) ++j;
      values_.push_back(ks[i]);
      cap_.push_back(j - i);
      i = j;
    }
    std::reverse(values_.begin(), values_.end());
    std::reverse(cap_.begin(), cap_.end());
    const std::size_t q = values_.size();
    for (std::size_t i = 0; i < q; ++i) {
      for (std::size_t j = i; j < q; ++j) {
        PairSym sym;
        sym.ia = i;
        sym.ib = j;
        sym.num_const = factorial(values_[i]) * factorial(values_[j]);
        sym.den_const = factorial(values_[i] + values_[j] - 1);
        if (i == j) sym.den_const *= 2;
        pair_syms_.push_back(std::move(sym));
      }
    }
    for (std::size_t i = 0; i < q; ++i) {
      hf_num_.push_back(factorial(values_[i]));
      hf_den_.push_back(factorial(values_[i] - 1));
    }
    K_ = 1;
    for (std::size_t i = 0; i < q; ++i) {
      for (long c = 0; c < cap_[i]; ++c) K_ *= factorial(values_[i]);
    }
    fall_nr_.resize(r + 1);
    for (int h = 0; h <= r; ++h) fall_nr_[h] = falling_factorial(n - r, h);
    fact_dim_.resize(n / 2 + 2);
    for (int b = 0; b <= n / 2 && b <= n - 3; ++b) fact_dim_[b] = factorial(n - 3 - b);
    const int depth_max = r + 3;
    num_stack_.assign(depth_max, Int(1));
    den_stack_.assign(depth_max, Int(1));
    used_.assign(q, 0);
  }

  Int run() {
    acc_ = 0;
    pairs_rec(0, 0, 0);
    return acc_;
  }

 private:
  struct PairSym {
    int ia, ib;
    Int num_const;  // fact(a) * fact(b): compensates the leg factorials in K
    Int den_const;  // fact(a+b-1), doubled on the diagonal
  };

  void emit(int depth, long blocks, long h) {
    tmp_ = num_stack_[depth] * fall_nr_[h];
    tmp_ *= fact_dim_[blocks];
    tmp2_ = den_stack_[depth] * K_;
    mpz_divexact(tmp_.get_mpz_t(), tmp_.get_mpz_t(), tmp2_.get_mpz_t());
    if (blocks % 2 != 0) {
      acc_ -= tmp_;
    } else {
      acc_ += tmp_;
    }
  }

  // Half-fork stage: choose, per exponent value, how many marks become
  // half-forks. Every prefix is itself a complete selection shape.
  void hf_rec(std::size_t cursor, int depth, long m, long h) {
    emit(depth, m + h, h);
    for (std::size_t vi = cursor; vi < values_.size(); ++vi) {
      const long cap = cap_[vi] - used_[vi];
      long z = 0;
      while (z < cap && h + z < n_ - r_) {
        ++z;
        Int& num = num_stack_[depth + 1];
        Int& den = den_stack_[depth + 1];
        if (z == 1) {
          num = num_stack_[depth];
          den = den_stack_[depth];
        }
        num *= (unsigned long)(cap - z + 1);
        num *= hf_num_[vi];
        den *= (unsigned long)z;
        den *= hf_den_[vi];
        used_[vi] += 1;
        hf_rec(vi + 1, depth + 1, m, h + z);
      }
      used_[vi] -= z;
    }
  }

  void pairs_rec(std::size_t cursor, int depth, long m) {
    hf_rec(0, depth, m, 0);
    for (std::size_t pi = cursor; pi < pair_syms_.size(); ++pi) {
      const PairSym& sym = pair_syms_[pi];
      long c = 0;
      while (true) {
        unsigned long factor;
        if (sym.ia == sym.ib) {
          const long rem = cap_[sym.ia] - used_[sym.ia];
          if (rem < 2) break;
          factor = (unsigned long)(rem * (rem - 1));
          used_[sym.ia] += 2;
        } else {
          const long ra = cap_[sym.ia] - used_[sym.ia];
          const long rb = cap_[sym.ib] - used_[sym.ib];
          if (ra < 1 || rb < 1) break;
          factor = (unsigned long)(ra * rb);
          used_[sym.ia] += 1;
          used_[sym.ib] += 1;
        }
        ++c;
        Int& num = num_stack_[depth + 1];
        Int& den = den_stack_[depth + 1];
        if (c == 1) {
          num = num_stack_[depth];
          den = den_stack_[depth];
        }
        num *= factor;
        num *= sym.num_const;
        den *= (unsigned long)c;
        den *= sym.den_const;
        pairs_rec(pi + 1, depth + 1, m + c);
      }
      if (sym.ia == sym.ib) {
        used_[sym.ia] -= 2 * c;
      } else {
        used_[sym.ia] -= c;
        used_[sym.ib] -= c;
      }
    }
  }

  int n_;
  int r_;
  std::vector<long> values_;  // distinct nonzero exponent values, descending
  std::vector<long> cap_;     // multiplicity of each value
  std::vector<PairSym> pair_syms_;
  std::vector<Int> hf_num_, hf_den_;
  std::vector<Int> fall_nr_;
  std::vector<Int> fact_dim_;  // fact_dim_[b] = (n-3-b)!
  Int K_;
  std::vector<long> used_;
  std::vector<Int> num_stack_, den_stack_;
  Int tmp_, tmp2_;
  Int acc_;
};

}  // namespace

namespace detail {

Int integrate_reduced_labeled(const PsiHatMonomial& m) {
  require_top_intersection(m);
  const std::vector<long> ks = sorted_exponents(m);
  int r = 0;
  while (r < m.n && ks[r] != 0) ++r;
  return reduced_labeled_sum(m.n, ks, r);
}

Int integrate_reduced_grouped(const PsiHatMonomial& m) {
  require_top_intersection(m);
  const std::vector<long> ks = sorted_exponents(m);
  int r = 0;
  while (r < m.n && ks[r] != 0) ++r;
  return GroupedReducedSum(m.n, ks, r).run();
}

}  // namespace detail

Int integrate_reduced(const PsiHatMonomial& m) {
  require_top_intersection(m);
  const std::vector<long> ks = sorted_exponents(m);
  int r = 0;
  while (r < m.n && ks[r] != 0) ++r;
  if (selection_count_estimate(r) <= 1.5e6) {
    return reduced_labeled_sum(m.n, ks, r);
  }
  return GroupedReducedSum(m.n, ks, r).run();
}

namespace {

// Exponent-level fork-structure sum. Same stack discipline as the grouped
// reduced engine, but the alphabet covers pairs with a zero half-edge and
// the preimage multiplicity comes out of falling factorials over all values
// including zero. Graphs with a (0,0) fork are skipped: their fork exponent
// is -1 and the summand vanishes.
class PkSum {
 public:
  explicit PkSum(int n, const SVector& s) : n_(n) {
    for (long v = (long)s.counts.size() - 1; v >= 0; --v) {
      if (s.counts[v] > 0) {
        values_.push_back(v);
        cap_.push_back(s.counts[v]);
      }
    }
    const std::size_t q = values_.size();
    for (std::size_t i = 0; i < q; ++i) {
      for (std::size_t j = i; j < q; ++j) {
        if (values_[i] == 0 && values_[j] == 0) continue;
        PairSym sym;
        sym.ia = i;
        sym.ib = j;
        sym.num_const = factorial(values_[i]) * factorial(values_[j]);
        sym.den_const = factorial(values_[i] + values_[j] - 1);
        if (i == j) sym.den_const *= 2;
        pair_syms_.push_back(std::move(sym));
      }
    }
    K_ = 1;
    for (std::size_t i = 0; i < q; ++i) {
      for (long c = 0; c < cap_[i]; ++c) K_ *= factorial(values_[i]);
    }
    fact_dim_.resize(n / 2 + 2);
    for (int b = 0; b <= n / 2 && b <= n - 3; ++b) fact_dim_[b] = factorial(n - 3 - b);
    num_stack_.assign(n / 2 + 3, Int(1));
    den_stack_.assign(n / 2 + 3, Int(1));
    used_.assign(q, 0);
  }

  Int run() {
    acc_ = 0;
    rec(0, 0, 0);
    return acc_;
  }

 private:
  struct PairSym {
    int ia, ib;
    Int num_const;
    Int den_const;
  };

  void rec(std::size_t cursor, int depth, long m) {
    tmp_ = num_stack_[depth] * fact_dim_[m];
    tmp2_ = den_stack_[depth] * K_;
    mpz_divexact(tmp_.get_mpz_t(), tmp_.get_mpz_t(), tmp2_.get_mpz_t());
    if (m % 2 != 0) {
      acc_ -= tmp_;
    } else {
      acc_ += tmp_;
    }
    for (std::size_t pi = cursor; pi < pair_syms_.size(); ++pi) {
      const PairSym& sym = pair_syms_[pi];
      long c = 0;
      while (true) {
        unsigned long factor;
        if (sym.ia == sym.ib) {
          const long rem = cap_[sym.ia] - used_[sym.ia];
          if (rem < 2) break;
          factor = (unsigned long)(rem * (rem - 1));
          used_[sym.ia] += 2;
        } else {
          const long ra = cap_[sym.ia] - used_[sym.ia];
          const long rb = cap_[sym.ib] - used_[sym.ib];
          if (ra < 1 || rb < 1) break;
          factor = (unsigned long)(ra * rb);
          used_[sym.ia] += 1;
          used_[sym.ib] += 1;
        }
        ++c;
        Int& num = num_stack_[depth + 1];
        Int& den = den_stack_[depth + 1];
        if (c == 1) {
          num = num_stack_[depth];
          den = den_stack_[depth];
        }
        num *= factor;
        num *= sym.num_const;
        den *= (unsigned long)c;
        den *= sym.den_const;
        rec(pi + 1, depth + 1, m + c);
      }
      if (sym.ia == sym.ib) {
        used_[sym.ia] -= 2 * c;
      } else {
        used_[sym.ia] -= c;
        used_[sym.ib] -= c;
      }
    }
  }

  int n_;
  std::vector<long> values_;
  std::vector<long> cap_;
  std::vector<PairSym> pair_syms_;
  std::vector<Int> fact_dim_;
  Int K_;
  std::vector<long> used_;
  std::vector<Int> num_stack_, den_stack_;
  Int tmp_, tmp2_;
  Int acc_;
};

}  // namespace

Int integrate_pk(const PsiHatMonomial& m) {
  require_top_intersection(m);
  return PkSum(m.n, SVector::from_exponents(m.k)).run();
}

Int psi_integral_m0n(int n, std::span<const long> k) {
  if ((int)k.size() != n) throw std::invalid_argument("exponent vector length must equal n");
  for (long v : k) {
    if (v < 0) throw std::invalid_argument("exponents must be nonnegative");
  }
  long sum = 0;
  for (long v : k) sum += v;
  if (n < 3 || sum != (long)n - 3) throw DimensionMismatchError();
  return multinomial(n - 3, k);
}

}  // namespace psihat
