#include "boundrank/support.hpp"

#include "boundrank/random.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace boundrank;

namespace {

BipartiteSupport bip(int n, std::vector<Pair> p) { return BipartiteSupport(n, std::move(p)); }
GraphSupport gr(int n, std::vector<Pair> e) { return GraphSupport(n, std::move(e)); }

bool is_matching(const std::vector<Pair>& m, bool bipartite) {
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = a + 1; b < m.size(); ++b) {
      if (bipartite && (m[a].i == m[b].i || m[a].j == m[b].j)) return false;
      if (!bipartite && (m[a].i == m[b].i || m[a].i == m[b].j || m[a].j == m[b].i || m[a].j == m[b].j)) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("supports normalize") {
  CHECK(gr(3, {{2, 1}, {1, 2}}).edges() == std::vector<Pair>{{1, 2}});
  CHECK(bip(2, {{2, 1}, {1, 2}, {2, 1}}).pairs() == std::vector<Pair>{{1, 2}, {2, 1}});
  CHECK(BipartiteSupport::full(3).size() == 9);
  CHECK(GraphSupport::complete(5).size() == 10);
  CHECK_ERROR_CODE(bip(2, {{3, 1}}), InvalidInput);
  CHECK_ERROR_CODE(gr(3, {{2, 2}}), InvalidInput);
}

TEST_CASE("matching number examples") {
  CHECK(nu_bipartite(bip(3, {{1, 1}, {2, 2}, {3, 3}})).size == 3);
  CHECK(nu_bipartite(bip(2, {{1, 1}, {1, 2}, {2, 1}})).size == 2);
  CHECK(nu_bipartite(bip(3, {})).size == 0);
  CHECK(nu_general(gr(3, {{1, 2}, {2, 3}, {1, 3}})).size == 1);
  CHECK(nu_general(gr(4, {{1, 2}, {3, 4}})).size == 2);
  const GraphSupport c5 = gr(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}});
  CHECK(nu_general(c5).size == 2);
  CHECK(oracle::matching_graph(c5) == 2);
  CHECK(oracle::matching_bipartite(bip(2, {{1, 1}, {1, 2}, {2, 1}})) == 2);
}

TEST_CASE("matchings agree with the subset oracle") {
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 4;
    const BipartiteSupport b = random_bipartite(rng, n);
    const MatchingResult mb = nu_bipartite(b);
    CHECK(mb.size == oracle::matching_bipartite(b));
    CHECK(is_matching(mb.matching, true));
    for (const Pair& p : mb.matching) CHECK(b.contains(p));
  }
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 2 + trial % 6;
    const GraphSupport g = random_graph(rng, n);
    if (g.size() > 16) continue;
    const int expected = oracle::matching_graph(g);
    const MatchingResult blossom = max_matching_blossom(g);
    CHECK(blossom.size == expected);
    CHECK(max_matching_exhaustive(g).size == expected);
    CHECK(nu_general(g).size == expected);
    CHECK(is_matching(blossom.matching, false));
    for (const Pair& e : blossom.matching) CHECK(g.contains(e));
  }
}

TEST_CASE("blossom on larger graphs with odd cycles") {
  // two triangles joined by a path: 1-2-3-1, 3-4, 4-5, 5-6-7-5
  const GraphSupport g = gr(7, {{1, 2}, {2, 3}, {1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {5, 7}});
  CHECK(max_matching_blossom(g).size == 3);
  // Petersen graph has a perfect matching
  const GraphSupport petersen = gr(10, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}, {5, 10},
                                        {6, 8}, {8, 10}, {7, 10}, {7, 9}, {6, 9}});
  CHECK(max_matching_blossom(petersen).size == 5);
  CHECK(max_matching_blossom(GraphSupport::complete(13)).size == 6);
}

TEST_CASE("max edges with bounded matching number") {
  CHECK(max_edges_bounded_nu_bipartite(BipartiteSupport::full(3), 1).size == 3);
  CHECK(max_edges_bounded_nu_bipartite(BipartiteSupport::full(3), 2).size == 6);
  const auto star = max_edges_bounded_nu_bipartite(bip(2, {{1, 1}, {1, 2}, {2, 1}}), 1);
  CHECK(star.size == 2);
  CHECK(nu_bipartite(star.witness).size == 1);
  CHECK(star.witness.pairs() == std::vector<Pair>{{1, 1}, {1, 2}});

  const GraphSupport triangle = gr(3, {{1, 2}, {2, 3}, {1, 3}});
  CHECK(max_edges_bounded_nu_general(triangle, 1).size == 3);
  CHECK(max_edges_bounded_nu_general(gr(4, {{1, 2}, {3, 4}}), 1).size == 1);
  CHECK(max_edges_bounded_nu_general(GraphSupport::complete(5), 5).size == 10);
  CHECK(max_edges_bounded_nu_bipartite(bip(3, {}), 1).size == 0);
  CHECK_ERROR_CODE(max_edges_bounded_nu_bipartite(bip(2, {}), -1), PreconditionViolated);
  CHECK_ERROR_CODE(max_edges_bounded_nu_general(gr(2, {}), -1), PreconditionViolated);

  for (int n = 1; n <= 5; ++n)
    for (int k = 1; k <= n; ++k) CHECK(max_edges_bounded_nu_bipartite(BipartiteSupport::full(n), k).size == k * n);
}

TEST_CASE("max edges agree with the subset oracle") {
  Rng rng(29);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 2 + trial % 3;
    const BipartiteSupport b = random_bipartite(rng, n);
    for (int k = 0; k <= n; ++k) {
      const auto r = max_edges_bounded_nu_bipartite(b, k);
      CHECK(r.size == oracle::max_edges_bipartite(b, k));
      CHECK(r.witness.size() == r.size);
      CHECK(nu_bipartite(r.witness).size <= k);
      for (const Pair& p : r.witness.pairs()) CHECK(b.contains(p));
    }
  }
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 3 + trial % 4;
    const GraphSupport g = random_graph(rng, n);
    if (g.size() > 14) continue;
    for (int k = 0; k <= n / 2; ++k) {
      const auto r = max_edges_bounded_nu_general(g, k);
      CHECK(r.size == oracle::max_edges_graph(g, k));
      CHECK(oracle::matching_graph(r.witness) <= k);
      for (const Pair& e : r.witness.edges()) CHECK(g.contains(e));
    }
  }
}

TEST_CASE("extract_matching_from_term") {
  const BipartiteSupport diag = bip(3, {{1, 1}, {2, 2}, {3, 3}, {1, 3}});
  const std::vector<int> id = {0, 1};
  const std::vector<int> swap = {1, 0};
  CHECK(extract_matching_from_term(diag, IndexSet({1, 2}), IndexSet({1, 2}), id) == std::vector<Pair>{{1, 1}, {2, 2}});
  const BipartiteSupport anti = bip(2, {{1, 2}, {2, 1}});
  CHECK(extract_matching_from_term(anti, IndexSet({1, 2}), IndexSet({1, 2}), swap) ==
        std::vector<Pair>{{1, 2}, {2, 1}});
  const std::vector<int> single = {0};
  CHECK(extract_matching_from_term(diag, IndexSet({1}), IndexSet({3}), single) == std::vector<Pair>{{1, 3}});
  CHECK_ERROR_CODE(extract_matching_from_term(anti, IndexSet({1, 2}), IndexSet({1, 2}), id), NotSupported);
}
