#include "psihat/graphs.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace psihat {

SVector SVector::from_exponents(std::span<const long> k) {
  SVector s;
  long maxv = 0;
  for (long v : k) {
    if (v < 0) throw std::invalid_argument("exponents must be nonnegative");
    maxv = std::max(maxv, v);
  }
  s.counts.assign(maxv + 1, 0);
  for (long v : k) ++s.counts[v];
  return s;
}

long SVector::n() const {
  long total = 0;
  for (long c : counts) total += c;
  return total;
}

long SVector::weight() const {
  long total = 0;
  for (std::size_t v = 0; v < counts.size(); ++v) total += (long)v * counts[v];
  return total;
}

DecoratedPGraph DecoratedPGraph::decorate(PGraph g, std::span<const long> k) {
  if ((int)k.size() != g.partition.n)
    throw std::invalid_argument("exponent vector length must equal n");
  DecoratedPGraph d;
  d.graph = std::move(g);
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] != 0) d.colored.push_back((int)i + 1);
  }
  return d;
}

PkGraph::PkGraph(std::vector<ExponentPair> forks, std::vector<long> legs)
    : fork_pairs(std::move(forks)), center_legs(std::move(legs)) {
  for (auto& [a, b] : fork_pairs) {
    if (a > b) std::swap(a, b);
  }
  std::sort(fork_pairs.begin(), fork_pairs.end());
  std::sort(center_legs.begin(), center_legs.end());
}

PkGraph pk_from_p(const PGraph& p, std::span<const long> k) {
  if ((int)k.size() != p.partition.n)
    throw std::invalid_argument("exponent vector length must equal n");
  std::vector<ExponentPair> forks;
  forks.reserve(p.partition.pairs.size());
  for (const MarkPair& pr : p.partition.pairs) {
    forks.emplace_back(k[pr.first - 1], k[pr.second - 1]);
  }
  std::vector<long> legs;
  legs.reserve(p.partition.singletons.size());
  for (int m : p.partition.singletons) legs.push_back(k[m - 1]);
  return PkGraph(std::move(forks), std::move(legs));
}

Int aut_count(const PkGraph& g) {
  long diagonal = 0;
  Int result = 1;
  std::size_t i = 0;
  while (i < g.fork_pairs.size()) {
    std::size_t j = i;
    while (j < g.fork_pairs.size() && g.fork_pairs[j] == g.fork_pairs[i]) ++j;
    result *= factorial(j - i);
    if (g.fork_pairs[i].first == g.fork_pairs[i].second) diagonal += (long)(j - i);
    i = j;
  }
  Int pow2;
  mpz_ui_pow_ui(pow2.get_mpz_t(), 2, (unsigned long)diagonal);
  return result * pow2;
}

Int count_preimages(const PkGraph& g, const SVector& s) {
  std::map<long, long> fork_occ;   // l_v
  std::map<long, long> total_occ;  // l_v + center-leg occurrences
  for (const auto& [a, b] : g.fork_pairs) {
    ++fork_occ[a];
    ++fork_occ[b];
    ++total_occ[a];
    ++total_occ[b];
  }
  for (long v : g.center_legs) ++total_occ[v];
  for (const auto& [v, c] : total_occ) {
    if (s.count(v) != c) throw std::invalid_argument("incompatible s-vector");
  }
  long content = 0;
  for (const auto& [v, c] : total_occ) content += c;
  if (content != s.n()) throw std::invalid_argument("incompatible s-vector");

  Int numerator = 1;
  for (const auto& [v, l] : fork_occ) numerator *= falling_factorial(s.count(v), l);
  Int result;
  Int aut = aut_count(g);
  mpz_divexact(result.get_mpz_t(), numerator.get_mpz_t(), aut.get_mpz_t());
  return result;
}

namespace {

struct PkEnum {
  const SVector* s;
  std::vector<ExponentPair> alphabet;
  std::vector<long> used;  // per exponent value
  std::vector<ExponentPair> forks;
  const std::function<void(const PkGraph&)>* visit;

  void recurse(std::size_t idx) {
    if (idx == alphabet.size()) {
      std::vector<long> legs;
      for (std::size_t v = 0; v < s->counts.size(); ++v) {
        for (long c = 0; c < s->counts[v] - used[v]; ++c) legs.push_back((long)v);
      }
      (*visit)(PkGraph(forks, std::move(legs)));
      return;
    }
    const auto [a, b] = alphabet[idx];
    recurse(idx + 1);
    long copies = 0;
    while (true) {
      if (a == b) {
        if (used[a] + 2 > s->counts[a]) break;
        used[a] += 2;
      } else {
        if (used[a] + 1 > s->counts[a] || used[b] + 1 > s->counts[b]) break;
        ++used[a];
        ++used[b];
      }
      ++copies;
      forks.push_back({a, b});
      recurse(idx + 1);
    }
    for (long c = 0; c < copies; ++c) forks.pop_back();
    if (a == b) {
      used[a] -= 2 * copies;
    } else {
      used[a] -= copies;
      used[b] -= copies;
    }
  }
};

}  // namespace

void for_each_pk_graph(const SVector& s, const std::function<void(const PkGraph&)>& visit) {
  PkEnum e;
  e.s = &s;
  for (long a = 0; a < (long)s.counts.size(); ++a) {
    if (s.counts[a] == 0) continue;
    for (long b = a; b < (long)s.counts.size(); ++b) {
      if (s.counts[b] == 0) continue;
      if (a == b && s.counts[a] < 2) continue;
      e.alphabet.push_back({a, b});
    }
  }
  e.used.assign(s.counts.size(), 0);
  e.visit = &visit;
  e.recurse(0);
}

std::vector<PkGraph> enumerate_pk_graphs(const SVector& s) {
  std::vector<PkGraph> out;
  for_each_pk_graph(s, [&](const PkGraph& g) { out.push_back(g); });
  return out;
}

std::string to_dot(const PGraph& g) {
  std::ostringstream os;
  os << "graph pgraph {\n";
  os << "  c [label=\"c\"];\n";
  for (int f = 0; f < g.fork_count(); ++f) os << "  f" << f << " [label=\"\"];\n";
  for (int f = 0; f < g.fork_count(); ++f) {
    const MarkPair& pr = g.partition.pairs[f];
    os << "  h" << pr.first << " [label=\"" << pr.first << "\"];\n";
    os << "  h" << pr.second << " [label=\"" << pr.second << "\"];\n";
  }
  for (int m : g.partition.singletons) os << "  h" << m << " [label=\"" << m << "\"];\n";
  for (int f = 0; f < g.fork_count(); ++f) {
    const MarkPair& pr = g.partition.pairs[f];
    os << "  c -- f" << f << ";\n";
    os << "  f" << f << " -- h" << pr.first << ";\n";
    os << "  f" << f << " -- h" << pr.second << ";\n";
  }
  for (int m : g.partition.singletons) os << "  c -- h" << m << ";\n";
  os << "}\n";
  return os.str();
}

std::string to_dot(const PkGraph& g) {
  std::ostringstream os;
  const int m = g.fork_count();
  os << "graph pkgraph {\n";
  os << "  c [label=\"c\"];\n";
  for (int f = 0; f < m; ++f) os << "  f" << f << " [label=\"\"];\n";
  for (int f = 0; f < m; ++f) {
    os << "  h" << 2 * f << " [label=\"" << g.fork_pairs[f].first << "\"];\n";
    os << "  h" << 2 * f + 1 << " [label=\"" << g.fork_pairs[f].second << "\"];\n";
  }
  for (std::size_t i = 0; i < g.center_legs.size(); ++i) {
    os << "  h" << 2 * m + (int)i << " [label=\"" << g.center_legs[i] << "\"];\n";
  }
  for (int f = 0; f < m; ++f) {
    os << "  c -- f" << f << ";\n";
    os << "  f" << f << " -- h" << 2 * f << ";\n";
    os << "  f" << f << " -- h" << 2 * f + 1 << ";\n";
  }
  for (std::size_t i = 0; i < g.center_legs.size(); ++i) {
    os << "  c -- h" << 2 * m + (int)i << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace psihat
