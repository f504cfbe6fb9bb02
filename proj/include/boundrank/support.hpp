#pragma once

#include <compare>
#include <span>
#include <vector>

#include "boundrank/matrix.hpp"

namespace boundrank {

/// A 1-based position (i, j); also used for graph edges {i < j}.
struct Pair {
  int i = 0;
  int j = 0;
  auto operator<=>(const Pair&) const = default;
};

/// B subset of [n]^2 with set semantics, kept sorted in lexicographic order.
class BipartiteSupport {
 public:
  BipartiteSupport() = default;
  BipartiteSupport(int n, std::vector<Pair> pairs);
  static BipartiteSupport full(int n);

  int n() const { return n_; }
  const std::vector<Pair>& pairs() const { return pairs_; }
  int size() const { return static_cast<int>(pairs_.size()); }
  bool contains(Pair p) const;
  bool operator==(const BipartiteSupport&) const = default;

 private:
  int n_ = 0;
  std::vector<Pair> pairs_;
};

/// G subset of C([n], 2); edges normalized to i < j and kept sorted.
class GraphSupport {
 public:
  GraphSupport() = default;
  GraphSupport(int n, std::vector<Pair> edges);
  static GraphSupport complete(int n);

  int n() const { return n_; }
  const std::vector<Pair>& edges() const { return edges_; }
  int size() const { return static_cast<int>(edges_.size()); }
  bool contains(Pair e) const;
  bool operator==(const GraphSupport&) const = default;

 private:
  int n_ = 0;
  std::vector<Pair> edges_;
};

struct MatchingResult {
  int size = 0;
  std::vector<Pair> matching;
};

/// Maximum bipartite matching by augmenting paths.
MatchingResult nu_bipartite(const BipartiteSupport& b);

/// Maximum matching by Edmonds' blossom contraction.
MatchingResult max_matching_blossom(const GraphSupport& g);
/// Maximum matching by exhaustive search over edge subsets; |G| <= 24.
MatchingResult max_matching_exhaustive(const GraphSupport& g);

inline constexpr int kExhaustiveMatchingArbiter = 12;

/// Blossom result, arbitrated by exhaustive search when |G| <= 12.
MatchingResult nu_general(const GraphSupport& g);

struct BipartiteMaxEdges {
  int size = 0;
  BipartiteSupport witness;
};

struct GraphMaxEdges {
  int size = 0;
  GraphSupport witness;
};

/// max{|B'| : B' subset B, nu_b(B') <= k}. Uses Koenig's theorem: the
/// feasible sets are exactly the edge sets covered by at most k vertices.
/// Ties go to the lexicographically smallest sorted edge list.
BipartiteMaxEdges max_edges_bounded_nu_bipartite(const BipartiteSupport& b, int k);

/// max{|G'| : G' subset G, nu(G') <= k} by branch and bound: whenever the
/// candidate holds a (k+1)-matching, branch on deleting each of its edges.
GraphMaxEdges max_edges_bounded_nu_general(const GraphSupport& g, int k);

/// {(i_t, j_pi(t))}; pi is a 0-based permutation of size |I|.
std::vector<Pair> extract_matching_from_term(const BipartiteSupport& b, const IndexSet& rows, const IndexSet& cols,
                                             std::span<const int> pi);

}  // namespace boundrank
