#pragma once

#include <compare>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "psihat/arith.hpp"
#include "psihat/partitions.hpp"

namespace psihat {

// Counts of marks per exponent value: counts[v] = #{ i : k_i = v }.
struct SVector {
  std::vector<long> counts;

  static SVector from_exponents(std::span<const long> k);

  long n() const;       // sum of counts
  long weight() const;  // sum of v * counts[v]
  bool graded() const { return weight() == n() - 3; }
  long count(long v) const {
    return (v >= 0 && v < (long)counts.size()) ? counts[v] : 0;
  }

  bool operator==(const SVector&) const = default;
};

// Dual graph of a HalfPartition: a central vertex carrying one half-edge per
// singleton, plus one "fork" vertex per pair carrying that pair's two
// half-edges.
struct PGraph {
  HalfPartition partition;

  int fork_count() const { return partition.fork_count(); }
  int central_valence() const { return partition.n - partition.fork_count(); }

  bool operator==(const PGraph&) const = default;
};

// A PGraph with the half-edges of nonzero exponent colored.
struct DecoratedPGraph {
  PGraph graph;
  std::vector<int> colored;  // ascending marks t with k_t != 0

  static DecoratedPGraph decorate(PGraph g, std::span<const long> k);
};

using ExponentPair = std::pair<long, long>;  // (a, b) with a <= b

// A PGraph with marks forgotten: each fork keeps only the unordered pair of
// exponents on its half-edges, the central vertex keeps the multiset of
// exponents on its own half-edges. Distinct PGraphs can coincide here; the
// preimage count below recovers the multiplicity.
//
// Canonical form: fork_pairs sorted lexicographically, center_legs sorted
// ascending; equality is equality of canonical forms.
struct PkGraph {
  std::vector<ExponentPair> fork_pairs;
  std::vector<long> center_legs;

  PkGraph() = default;
  PkGraph(std::vector<ExponentPair> forks, std::vector<long> legs);

  int fork_count() const { return (int)fork_pairs.size(); }
  long n() const { return 2 * (long)fork_pairs.size() + (long)center_legs.size(); }

  auto operator<=>(const PkGraph&) const = default;
};

PkGraph pk_from_p(const PGraph& p, std::span<const long> k);

// |Aut| of the graph with the central half-edges removed: 2^d * prod j_f!
// where d counts forks whose two exponents are equal and the j_f are the
// multiplicities of the distinct fork pairs.
Int aut_count(const PkGraph& g);

// Number of PGraphs mapping to g under pk_from_p for a monomial with
// exponent multiset s:  (1/|Aut|) * prod_v falling_factorial(s_v, l_v),
// l_v = occurrences of v among fork half-edges.
// Throws std::invalid_argument("incompatible s-vector") when g's exponent
// content does not match s.
Int count_preimages(const PkGraph& g, const SVector& s);

// Visits every PkGraph reachable from some HalfPartition of the monomial
// with exponent multiset s, exactly once, built directly over exponent
// multisets. Order: fork-pair alphabet sorted lexicographically, copy counts
// ascending, nested left-to-right (so the fork-free graph comes first).
void for_each_pk_graph(const SVector& s, const std::function<void(const PkGraph&)>& visit);

std::vector<PkGraph> enumerate_pk_graphs(const SVector& s);

// DOT export. Nodes: "c" (center), "f0".."f{m-1}" (forks), "h{index}"
// (half-edge leaves; the mark for a PGraph, positional for a PkGraph).
// Labels carry mark indices resp. exponent values. Byte-stable on canonical
// inputs.
std::string to_dot(const PGraph& g);
std::string to_dot(const PkGraph& g);

}  // namespace psihat
