#include "psihat/series.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace psihat {

long key_degree(const MonomialKey& s) {
  long d = 0;
  for (long v : s) d += v;
  return d;
}

long key_weight(const MonomialKey& s) {
  long w = 0;
  for (std::size_t i = 0; i < s.size(); ++i) w += (long)i * s[i];
  return w;
}

namespace {

void trim(MonomialKey& s) {
  while (!s.empty() && s.back() == 0) s.pop_back();
}

}  // namespace

Rat FormalSeries::coeff(const MonomialKey& s) const {
  MonomialKey key = s;
  trim(key);
  auto it = terms_.find(key);
  return it == terms_.end() ? Rat(0) : it->second;
}

void FormalSeries::add(MonomialKey s, const Rat& c) {
  if (c == 0) return;
  trim(s);
  if (key_degree(s) > n_max_) return;
  auto [it, inserted] = terms_.try_emplace(std::move(s), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

ForkMultiset::ForkMultiset(std::vector<ExponentPair> p) : pairs(std::move(p)) {
  for (auto& [i, j] : pairs) {
    if (i > j) std::swap(i, j);
    if (i < 0) throw std::invalid_argument("fork indices must be nonnegative");
    if (i == 0 && j == 0) throw std::invalid_argument("(0,0) fork has no derivative");
  }
  std::sort(pairs.begin(), pairs.end());
}

FormalSeries build_witten_F(int n_max) {
  if (n_max < 3) throw std::invalid_argument("build_witten_F requires n_max >= 3");
  FormalSeries F(n_max);
  // Graded monomials of degree n: s_0 = n - #parts where the parts form an
  // integer partition of n - 3.
  std::vector<long> parts;
  for (int n = 3; n <= n_max; ++n) {
    const long target = n - 3;
    // enumerate partitions of `target` into nonincreasing positive parts
    std::function<void()> emit = [&]() {
      MonomialKey s;
      long maxpart = parts.empty() ? 0 : parts[0];
      s.assign(maxpart + 1, 0);
      s[0] = n - (long)parts.size();
      std::vector<long> marks;
      marks.reserve(n);
      for (long p : parts) {
        ++s[p];
        marks.push_back(p);
      }
      for (long i = 0; i < s[0]; ++i) marks.push_back(0);
      Int correlation = multinomial(target, marks);
      Int sfact = 1;
      for (long c : s) sfact *= factorial((unsigned long)c);
      F.add(std::move(s), make_rat(correlation, sfact));
    };
    std::function<void(long, long)> rec = [&](long remaining, long maxpart) {
      if (remaining == 0) {
        emit();
        return;
      }
      for (long p = std::min(remaining, maxpart); p >= 1; --p) {
        parts.push_back(p);
        rec(remaining - p, p);
        parts.pop_back();
      }
    };
    rec(target, target == 0 ? 1 : target);
  }
  return F;
}

FormalSeries apply_L(const FormalSeries& f) {
  FormalSeries out(f.n_max());
  for (const auto& [key, c] : f.terms()) {
    for (long d = 0; d < (long)key.size(); ++d) {
      if (key[d] == 0) continue;
      // unordered (i,j) with i + j = d + 1; i < j counts twice in the
      // ordered double sum, i == j once with the 1/2 surviving
      for (long i = 0; 2 * i <= d + 1; ++i) {
        const long j = d + 1 - i;
        MonomialKey s = key;
        if ((long)s.size() <= j) s.resize(j + 1, 0);
        s[d] -= 1;
        s[i] += 1;
        s[j] += 1;
        Rat w = (i == j) ? make_rat(1, 2) : Rat(1);
        out.add(std::move(s), w * key[d] * c);
      }
    }
  }
  return out;
}

Rat operator_weight(const ForkMultiset& forks) {
  long diagonal = 0;
  Int den = 1;
  std::size_t i = 0;
  while (i < forks.pairs.size()) {
    std::size_t j = i;
    while (j < forks.pairs.size() && forks.pairs[j] == forks.pairs[i]) ++j;
    den *= factorial(j - i);
    if (forks.pairs[i].first == forks.pairs[i].second) diagonal += (long)(j - i);
    i = j;
  }
  Int pow2;
  mpz_ui_pow_ui(pow2.get_mpz_t(), 2, (unsigned long)diagonal);
  den *= pow2;
  Rat w = make_rat(1, den);
  if (forks.size() % 2 != 0) w = -w;
  return w;
}

namespace {

// Enumerates fork multisets acting on one source monomial. The alphabet is
// finite: each fork's derivative index must lie in the monomial's support,
// and the multiset size is capped by the truncation headroom.
class ForkEnum {
 public:
  ForkEnum(const MonomialKey& sigma, const Rat& coeff, int m_cap, FormalSeries& out)
      : sigma_(sigma), coeff_(coeff), m_cap_(m_cap), out_(out) {
    for (long d = 0; d < (long)sigma.size(); ++d) {
      if (sigma[d] == 0) continue;
      for (long i = 0; 2 * i <= d + 1; ++i) {
        alphabet_.push_back({i, d + 1 - i});  // derivative index i+j-1 = d
      }
    }
    deriv_used_.assign(sigma.size(), 0);
  }

  void run() { recurse(0); }

 private:
  void recurse(std::size_t cursor) {
    emit();
    if ((int)chosen_.size() == m_cap_) return;
    for (std::size_t a = cursor; a < alphabet_.size(); ++a) {
      const auto [i, j] = alphabet_[a];
      const long d = i + j - 1;
      if (deriv_used_[d] == sigma_[d]) continue;
      ++deriv_used_[d];
      chosen_.push_back(alphabet_[a]);
      recurse(a);  // same symbol may repeat
      chosen_.pop_back();
      --deriv_used_[d];
    }
  }

  void emit() {
    // weight * falling-factorial derivative factor, applied to sigma
    Rat w = operator_weight(ForkMultiset(chosen_));
    Int deriv = 1;
    for (long d = 0; d < (long)deriv_used_.size(); ++d) {
      if (deriv_used_[d] > 0) deriv *= falling_factorial(sigma_[d], deriv_used_[d]);
    }
    MonomialKey s = sigma_;
    long max_index = (long)s.size() - 1;
    for (const auto& pr : chosen_) max_index = std::max(max_index, pr.second);
    s.resize(max_index + 1, 0);
    for (long d = 0; d < (long)deriv_used_.size(); ++d) s[d] -= deriv_used_[d];
    for (const auto& [i, j] : chosen_) {
      s[i] += 1;
      s[j] += 1;
    }
    out_.add(std::move(s), coeff_ * w * Rat(deriv));
  }

  const MonomialKey& sigma_;
  const Rat& coeff_;
  int m_cap_;
  FormalSeries& out_;
  std::vector<ExponentPair> alphabet_;
  std::vector<long> deriv_used_;
  std::vector<ExponentPair> chosen_;
};

}  // namespace

FormalSeries apply_normal_ordered_exp_negL(const FormalSeries& f) {
  FormalSeries out(f.n_max());
  for (const auto& [key, c] : f.terms()) {
    const int m_cap = f.n_max() - (int)key_degree(key);
    ForkEnum(key, c, m_cap, out).run();
  }
  return out;
}

FormalSeries build_G(int n_max) {
  if (n_max < 5) throw std::invalid_argument("build_G requires n_max >= 5");
  FormalSeries G = apply_normal_ordered_exp_negL(build_witten_F(n_max));
  G.add({3}, make_rat(-1, 6));
  G.add({3, 1}, make_rat(2, 6));
  for (const auto& [key, c] : G.terms()) {
    if (key_degree(key) <= 4) throw std::logic_error("nonzero low-degree coefficient in G");
  }
  return G;
}

Int intersection_from_G(const FormalSeries& g, const SVector& s) {
  const long n = s.n();
  if (n == 3 || n == 4) throw EmptyModuliSpaceError();
  if (n < 3 || !s.graded()) throw DimensionMismatchError();
  if (n > g.n_max()) throw std::invalid_argument("monomial beyond series truncation");
  MonomialKey key(s.counts.begin(), s.counts.end());
  Rat value = g.coeff(key);
  for (long c : s.counts) value *= Rat(factorial((unsigned long)c));
  if (value.get_den() != 1) throw std::logic_error("non-integer intersection number from G");
  return value.get_num();
}

bool check_string_equation(const FormalSeries& f) {
  FormalSeries lhs(f.n_max()), rhs(f.n_max());
  for (const auto& [key, c] : f.terms()) {
    if (!key.empty() && key[0] >= 1) {
      MonomialKey s = key;
      s[0] -= 1;
      lhs.add(std::move(s), c * key[0]);
    }
    for (long i = 0; i < (long)key.size(); ++i) {
      if (key[i] == 0) continue;
      MonomialKey s = key;
      if ((long)s.size() <= i + 1) s.resize(i + 2, 0);
      s[i] -= 1;
      s[i + 1] += 1;
      rhs.add(std::move(s), c * key[i]);
    }
  }
  rhs.add(MonomialKey{2}, make_rat(1, 2));
  const long window = f.n_max() - 1;
  auto within = [&](const MonomialKey& k) { return key_degree(k) <= window; };
  for (const auto& [key, c] : lhs.terms()) {
    if (within(key) && rhs.coeff(key) != c) return false;
  }
  for (const auto& [key, c] : rhs.terms()) {
    if (within(key) && lhs.coeff(key) != c) return false;
  }
  return true;
}

std::string to_json(const FormalSeries& f) {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (const auto& [key, c] : f.terms()) {
    if (!first) os << ",";
    first = false;
    os << "{\"s\":[";
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (i) os << ",";
      os << key[i];
    }
    os << "],\"num\":\"" << c.get_num().get_str() << "\",\"den\":\"" << c.get_den().get_str()
       << "\"}";
  }
  os << "]";
  return os.str();
}

}  // namespace psihat
