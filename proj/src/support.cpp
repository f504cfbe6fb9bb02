#include "boundrank/support.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <queue>
#include <string>
#include <unordered_set>

#include "boundrank/combinatorics.hpp"

namespace boundrank {

BipartiteSupport::BipartiteSupport(int n, std::vector<Pair> pairs) : n_(n), pairs_(std::move(pairs)) {
  require(n >= 0 && n <= kMaxMatrixDim, ErrorCode::InvalidInput, "support size out of range");
  for (const Pair& p : pairs_)
    require(p.i >= 1 && p.i <= n && p.j >= 1 && p.j <= n, ErrorCode::InvalidInput,
            "pair (" + std::to_string(p.i) + "," + std::to_string(p.j) + ") outside [n]^2");
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

BipartiteSupport BipartiteSupport::full(int n) {
  std::vector<Pair> pairs;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) pairs.push_back({i, j});
  return BipartiteSupport(n, std::move(pairs));
}

bool BipartiteSupport::contains(Pair p) const { return std::binary_search(pairs_.begin(), pairs_.end(), p); }

GraphSupport::GraphSupport(int n, std::vector<Pair> edges) : n_(n), edges_(std::move(edges)) {
  require(n >= 0 && n <= 2 * kMaxMatrixDim, ErrorCode::InvalidInput, "graph size out of range");
  for (Pair& e : edges_) {
    require(e.i != e.j, ErrorCode::InvalidInput, "graph supports have no loops");
    if (e.i > e.j) std::swap(e.i, e.j);
    require(e.i >= 1 && e.j <= n, ErrorCode::InvalidInput,
            "edge {" + std::to_string(e.i) + "," + std::to_string(e.j) + "} outside [n]");
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

GraphSupport GraphSupport::complete(int n) {
  std::vector<Pair> edges;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) edges.push_back({i, j});
  return GraphSupport(n, std::move(edges));
}

bool GraphSupport::contains(Pair e) const {
  if (e.i > e.j) std::swap(e.i, e.j);
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

MatchingResult nu_bipartite(const BipartiteSupport& b) {
  const int n = b.n();
  std::vector<std::vector<int>> adj(n + 1);
  for (const Pair& p : b.pairs()) adj[p.i].push_back(p.j);
  std::vector<int> match_col(n + 1, 0);  // column -> row, 0 = free
  std::vector<char> seen;

  auto augment = [&](auto&& self, int row) -> bool {
    for (int col : adj[row]) {
      if (seen[col]) continue;
      seen[col] = 1;
      if (match_col[col] == 0 || self(self, match_col[col])) {
        match_col[col] = row;
        return true;
      }
    }
    return false;
  };

  MatchingResult result;
  for (int row = 1; row <= n; ++row) {
    seen.assign(n + 1, 0);
    if (augment(augment, row)) ++result.size;
  }
  for (int col = 1; col <= n; ++col)
    if (match_col[col] != 0) result.matching.push_back({match_col[col], col});
  std::sort(result.matching.begin(), result.matching.end());
  return result;
}

namespace {

// Edmonds' algorithm on 0-based vertices.
class Blossom {
 public:
  explicit Blossom(const GraphSupport& g) : n_(g.n()), adj_(g.n()), match_(g.n(), -1) {
    for (const Pair& e : g.edges()) {
      adj_[e.i - 1].push_back(e.j - 1);
      adj_[e.j - 1].push_back(e.i - 1);
    }
  }

  std::vector<int> solve() {
    for (int root = 0; root < n_; ++root) {
      if (match_[root] != -1) continue;
      int v = find_path(root);
      while (v != -1) {
        const int pv = parent_[v];
        const int ppv = match_[pv];
        match_[v] = pv;
        match_[pv] = v;
        v = ppv;
      }
    }
    return match_;
  }

 private:
  int lca(int a, int b) {
    std::vector<char> on_path(n_, 0);
    while (true) {
      a = base_[a];
      on_path[a] = 1;
      if (match_[a] == -1) break;
      a = parent_[match_[a]];
    }
    while (true) {
      b = base_[b];
      if (on_path[b]) return b;
      b = parent_[match_[b]];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[v] != b) {
      in_blossom_[base_[v]] = in_blossom_[base_[match_[v]]] = 1;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  int find_path(int root) {
    used_.assign(n_, 0);
    parent_.assign(n_, -1);
    base_.resize(n_);
    for (int i = 0; i < n_; ++i) base_[i] = i;
    used_[root] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int to : adj_[v]) {
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] != -1 && parent_[match_[to]] != -1)) {
          const int cur = lca(v, to);
          in_blossom_.assign(n_, 0);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (int i = 0; i < n_; ++i) {
            if (!in_blossom_[base_[i]]) continue;
            base_[i] = cur;
            if (!used_[i]) {
              used_[i] = 1;
              q.push(i);
            }
          }
        } else if (parent_[to] == -1) {
          parent_[to] = v;
          if (match_[to] == -1) return to;
          used_[match_[to]] = 1;
          q.push(match_[to]);
        }
      }
    }
    return -1;
  }

  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> match_;
  std::vector<int> parent_;
  std::vector<int> base_;
  std::vector<char> used_;
  std::vector<char> in_blossom_;
};

MatchingResult from_mate(const std::vector<int>& mate) {
  MatchingResult r;
  for (int v = 0; v < static_cast<int>(mate.size()); ++v)
    if (mate[v] > v) r.matching.push_back({v + 1, mate[v] + 1});
  r.size = static_cast<int>(r.matching.size());
  return r;
}

}  // namespace

MatchingResult max_matching_blossom(const GraphSupport& g) { return from_mate(Blossom(g).solve()); }

MatchingResult max_matching_exhaustive(const GraphSupport& g) {
  const auto& edges = g.edges();
  require(edges.size() <= 24, ErrorCode::InvalidInput, "exhaustive matching limited to 24 edges");
  MatchingResult best;
  const std::uint32_t total = 1u << edges.size();
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    const int count = std::popcount(mask);
    if (count <= best.size) continue;
    std::uint64_t covered = 0;
    bool ok = true;
    for (std::size_t e = 0; e < edges.size() && ok; ++e) {
      if (!(mask & (1u << e))) continue;
      const std::uint64_t bits = (1ull << edges[e].i) | (1ull << edges[e].j);
      ok = (covered & bits) == 0;
      covered |= bits;
    }
    if (!ok) continue;
    best.size = count;
    best.matching.clear();
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (mask & (1u << e)) best.matching.push_back(edges[e]);
  }
  return best;
}

MatchingResult nu_general(const GraphSupport& g) {
  MatchingResult r = max_matching_blossom(g);
  if (g.size() <= kExhaustiveMatchingArbiter) {
    MatchingResult check = max_matching_exhaustive(g);
    if (check.size != r.size) return check;
  }
  return r;
}

BipartiteMaxEdges max_edges_bounded_nu_bipartite(const BipartiteSupport& b, int k) {
  require(k >= 0, ErrorCode::PreconditionViolated, "k must be nonnegative");
  // Vertices are rows 1..n (ids 0..n-1) and columns 1..n (ids n..2n-1);
  // only vertices touched by B can matter for coverage.
  const int n = b.n();
  std::vector<int> touched;
  {
    std::vector<char> seen(2 * n, 0);
    for (const Pair& p : b.pairs()) {
      seen[p.i - 1] = 1;
      seen[n + p.j - 1] = 1;
    }
    for (int v = 0; v < 2 * n; ++v)
      if (seen[v]) touched.push_back(v);
  }
  const int cover_size = std::min<int>(k, static_cast<int>(touched.size()));

  BipartiteMaxEdges best{0, BipartiteSupport(n, {})};
  bool have = false;
  std::vector<char> in_cover(2 * n, 0);
  for_each_combination(static_cast<int>(touched.size()), cover_size, [&](std::span<const int> pick) {
    std::fill(in_cover.begin(), in_cover.end(), 0);
    for (int a : pick) in_cover[touched[a]] = 1;
    std::vector<Pair> covered;
    for (const Pair& p : b.pairs())
      if (in_cover[p.i - 1] || in_cover[n + p.j - 1]) covered.push_back(p);
    const int size = static_cast<int>(covered.size());
    if (!have || size > best.size ||
        (size == best.size && std::lexicographical_compare(covered.begin(), covered.end(),
                                                           best.witness.pairs().begin(), best.witness.pairs().end()))) {
      best = {size, BipartiteSupport(n, std::move(covered))};
      have = true;
    }
    return true;
  });
  return best;
}

GraphMaxEdges max_edges_bounded_nu_general(const GraphSupport& g, int k) {
  require(k >= 0, ErrorCode::PreconditionViolated, "k must be nonnegative");
  const auto& edges = g.edges();
  require(edges.size() <= 64, ErrorCode::InvalidInput, "branch and bound limited to 64 edges");
  const int m = static_cast<int>(edges.size());

  auto to_edges = [&](std::uint64_t mask) {
    std::vector<Pair> out;
    for (int e = 0; e < m; ++e)
      if (mask >> e & 1u) out.push_back(edges[e]);
    return out;
  };
  auto edge_index = [&](Pair e) {
    return static_cast<int>(std::lower_bound(edges.begin(), edges.end(), e) - edges.begin());
  };

  int best_size = -1;
  std::vector<Pair> best_edges;
  std::unordered_set<std::uint64_t> visited;

  auto explore = [&](auto&& self, std::uint64_t mask) -> void {
    if (!visited.insert(mask).second) return;
    const int size = std::popcount(mask);
    if (size < best_size) return;
    std::vector<Pair> current = to_edges(mask);
    const MatchingResult mm = max_matching_blossom(GraphSupport(g.n(), current));
    if (mm.size <= k) {
      if (size > best_size || std::lexicographical_compare(current.begin(), current.end(), best_edges.begin(),
                                                           best_edges.end())) {
        best_size = size;
        best_edges = std::move(current);
      }
      return;
    }
    for (int t = 0; t <= k; ++t) self(self, mask & ~(1ull << edge_index(mm.matching[t])));
  };

  const std::uint64_t all = m == 64 ? ~0ull : ((1ull << m) - 1);
  explore(explore, all);
  return {best_size, GraphSupport(g.n(), std::move(best_edges))};
}

std::vector<Pair> extract_matching_from_term(const BipartiteSupport& b, const IndexSet& rows, const IndexSet& cols,
                                             std::span<const int> pi) {
  require(rows.size() == cols.size() && static_cast<int>(pi.size()) == rows.size(), ErrorCode::InvalidIndexSet,
          "term needs |I| = |J| = |pi|");
  std::vector<Pair> out;
  for (int t = 0; t < rows.size(); ++t) {
    const Pair p{rows[t], cols[pi[t]]};
    if (!b.contains(p))
      throw Error(ErrorCode::NotSupported,
                  "pair (" + std::to_string(p.i) + "," + std::to_string(p.j) + ") not in the support");
    out.push_back(p);
  }
  return out;
}

}  // namespace boundrank
