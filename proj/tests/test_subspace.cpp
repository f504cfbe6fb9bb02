#include "boundrank/subspace.hpp"

#include <set>

#include "boundrank/json_io.hpp"
#include "boundrank/random.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace boundrank;
using testutil::M;

namespace {

MatrixSubspace span(const char* field, int n, std::vector<Matrix> mats, Flavor flavor = Flavor::general) {
  return MatrixSubspace::canonicalize(Field::parse(field), n, flavor, mats);
}

Matrix e(const char* field, int n, int i, int j) { return Matrix::unit(Field::parse(field), n, i, j); }

}  // namespace

TEST_CASE("coordinates follow lex order") {
  CHECK(coordinate_count(3, Flavor::general) == 9);
  CHECK(coordinate_count(4, Flavor::alternating) == 6);
  CHECK(coordinate_position(3, Flavor::general, 5) == Pair{2, 3});
  CHECK(coordinate_position(4, Flavor::alternating, 3) == Pair{2, 3});
  for (int c = 0; c < 6; ++c)
    CHECK(coordinate_index(4, Flavor::alternating, coordinate_position(4, Flavor::alternating, c)) == c);
  CHECK(lex_leading_position(M("gf3", {{0, 0}, {2, 1}})) == Pair{2, 1});
}

TEST_CASE("canonicalize") {
  const Field& f3 = Field::parse("gf3");
  const MatrixSubspace a = span("gf3", 2, {Matrix::identity(f3, 2), Matrix::identity(f3, 2).scaled(f3.from_int(2))});
  CHECK(a.dim() == 1);
  CHECK(a.basis_matrix(0) == Matrix::identity(f3, 2));

  const MatrixSubspace b = span("gf3", 2, {e("gf3", 2, 1, 2) + e("gf3", 2, 2, 1), e("gf3", 2, 1, 2)});
  CHECK(b.basis() == std::vector<Matrix>{e("gf3", 2, 1, 2), e("gf3", 2, 2, 1)});
  CHECK(b.pivot_positions() == std::vector<Pair>{{1, 2}, {2, 1}});
  CHECK(MatrixSubspace::canonicalize(f3, 2, Flavor::general, b.basis()) == b);

  const Matrix w12 = unit_wedge(f3, 3, 1, 2);
  const MatrixSubspace c = span("gf3", 3, {w12}, Flavor::alternating);
  CHECK(c.basis() == std::vector<Matrix>{w12});
  CHECK_ERROR_CODE(span("gf3", 2, {Matrix::identity(f3, 2)}, Flavor::alternating), NotAlternating);
}

TEST_CASE("leading supports") {
  const Field& f3 = Field::parse("gf3");
  CHECK(leading_support(span("gf3", 2, {Matrix::identity(f3, 2)})).pairs() == std::vector<Pair>{{1, 1}});
  const MatrixSubspace w = span("gf3", 2, {Matrix::identity(f3, 2), e("gf3", 2, 1, 2)});
  CHECK(leading_support(w).pairs() == std::vector<Pair>{{1, 1}, {1, 2}});
  // same set from the members themselves
  std::set<Pair> seen;
  for (const Matrix& m : oracle::all_members(w))
    if (!m.is_zero()) seen.insert(lex_leading_position(m));
  CHECK(std::vector<Pair>(seen.begin(), seen.end()) == leading_support(w).pairs());
  CHECK(leading_support_alt(span("gf3", 3, {unit_wedge(f3, 3, 1, 2)}, Flavor::alternating)).edges() ==
        std::vector<Pair>{{1, 2}});
}

TEST_CASE("leading support equals the set of member leading positions on random spaces") {
  Rng rng(41);
  for (const char* name : {"gf2", "gf3", "gf4"}) {
    const Field& f = Field::parse(name);
    for (int trial = 0; trial < 40; ++trial) {
      const MatrixSubspace w = trial % 2 ? random_subspace(rng, f, 3, 1 + trial % 3)
                                         : random_alternating_subspace(rng, f, 4, 1 + trial % 3);
      std::set<Pair> seen;
      for (const Matrix& m : oracle::all_members(w))
        if (!m.is_zero()) seen.insert(lex_leading_position(m));
      const std::vector<Pair> lead =
          w.flavor() == Flavor::general ? leading_support(w).pairs() : leading_support_alt(w).edges();
      CHECK(std::vector<Pair>(seen.begin(), seen.end()) == lead);
      CHECK(static_cast<int>(lead.size()) == w.dim());
    }
  }
}

TEST_CASE("coordinate spaces") {
  const Field& f2 = Field::parse("gf2");
  CHECK(coordinate_space(f2, BipartiteSupport::full(2)).dim() == 4);
  CHECK(coordinate_space_alt(f2, GraphSupport(3, {{1, 2}})).dim() == 1);
  CHECK(coordinate_space(f2, BipartiteSupport(2, {})).dim() == 0);
}

TEST_CASE("member enumeration") {
  const Field& f2 = Field::parse("gf2");
  const Field& f3 = Field::parse("gf3");
  const MatrixSubspace z = MatrixSubspace::zero(f2, 2, Flavor::general);
  const auto zm = enumerate_members(z, false);
  REQUIRE(zm.size() == 1);
  CHECK(zm.front().is_zero());
  CHECK(enumerate_members(coordinate_space(f2, BipartiteSupport(2, {{1, 1}, {2, 2}})), false).size() == 4);
  const MatrixSubspace w3 = coordinate_space(f3, BipartiteSupport(2, {{1, 1}, {1, 2}, {2, 2}}));
  CHECK(enumerate_members(w3, true).size() == 13);
  CHECK(member_count(w3, true) == 13);
  CHECK(member_count(w3, false) == 27);

  // projective representatives have leading coefficient 1 and are pairwise non-proportional
  std::vector<std::uint8_t> c(3);
  std::set<std::vector<std::uint8_t>> reps;
  for (std::uint64_t idx = 0; idx < 13; ++idx) {
    member_coefficients(w3, true, idx, c);
    const auto lead = std::find_if(c.begin(), c.end(), [](std::uint8_t v) { return v != 0; });
    REQUIRE(lead != c.end());
    CHECK(*lead == 1);
    reps.insert(c);
  }
  CHECK(reps.size() == 13);
  CHECK_THROWS_AS(enumerate_members(coordinate_space(f3, BipartiteSupport::full(3)), false, 100), BudgetExceeded);
}

TEST_CASE("subspace enumeration counts and uniqueness") {
  const Field& f2 = Field::parse("gf2");
  const Ambient three = Ambient::of(f2, BipartiteSupport(2, {{1, 1}, {1, 2}, {2, 2}}));
  CHECK(SubspaceEnumerator(three, 1).count() == 7);
  const Ambient four = Ambient::of(f2, BipartiteSupport::full(2));
  CHECK(SubspaceEnumerator(four, 2).count() == 35);
  CHECK(SubspaceEnumerator(four, 4).count() == 1);
  CHECK(SubspaceEnumerator(four, 4).at(0) == coordinate_space(f2, BipartiteSupport::full(2)));

  for (const char* name : {"gf2", "gf3", "gf4"}) {
    const Field& f = Field::parse(name);
    for (int size = 1; size <= 4; ++size) {
      std::vector<Pair> pairs;
      for (int c = 0; c < size; ++c) pairs.push_back({c / 2 + 1, c % 2 + 1});
      const Ambient amb = Ambient::of(f, BipartiteSupport(2, pairs));
      for (int d = 0; d <= size; ++d) {
        SubspaceEnumerator en(amb, d);
        CHECK(en.count() == oracle::gaussian_binomial(size, d, f.order()));
        std::set<std::vector<std::vector<std::uint8_t>>> seen;
        for (std::uint64_t idx = 0; idx < en.count(); ++idx) {
          const MatrixSubspace w = en.at(idx);
          CHECK(w.dim() == d);
          CHECK(coordinate_space(f, BipartiteSupport(2, pairs)).contains(w));
          CHECK(MatrixSubspace::canonicalize(f, 2, Flavor::general, w.basis()) == w);
          seen.insert(w.rows());
        }
        CHECK(seen.size() == en.count());
      }
    }
  }
  const Ambient alt = Ambient::of(Field::parse("gf3"), GraphSupport::complete(4));
  CHECK(SubspaceEnumerator(alt, 3).count() == oracle::gaussian_binomial(6, 3, 3));
  CHECK_THROWS_AS(SubspaceEnumerator(alt, 3).check_budget(10, "test"), BudgetExceeded);
}

TEST_CASE("rho and rho_omega") {
  const Field& f2 = Field::parse("gf2");
  const Field& f3 = Field::parse("gf3");
  const MatrixSubspace diag = coordinate_space(f2, BipartiteSupport(2, {{1, 1}, {2, 2}}));
  for (const WeightFn& w : {WeightFn::sgn(f2), WeightFn::one(f2), WeightFn::random(f2, 4)}) CHECK(rho_omega(diag, w) == 2);
  const std::vector<Matrix> wu = {M("gf3", {{1, 0}, {-1, 0}}), M("gf3", {{0, 1}, {0, 1}})};
  const MatrixSubspace w = MatrixSubspace::canonicalize(f3, 2, Flavor::general, wu);
  CHECK(rho_omega(w, WeightFn::one(f3)) == 1);
  CHECK(rho(w) == 2);
  CHECK(rho(MatrixSubspace::zero(f3, 3, Flavor::general)) == 0);

  Rng rng(71);
  for (const char* name : {"gf2", "gf3"}) {
    const Field& f = Field::parse(name);
    const WeightFn om = WeightFn::random(f, 12);
    for (int trial = 0; trial < 25; ++trial) {
      const MatrixSubspace s = random_subspace(rng, f, 3, 1 + trial % 3);
      CHECK(rho(s) == oracle::max_rank(s, [](const Matrix& m) { return oracle::rank(m); }));
      CHECK(rho_omega(s, om) == oracle::max_rank(s, [&](const Matrix& m) { return oracle::omega_rank(m, om); }));
    }
  }
}

TEST_CASE("subspace JSON round trip and ambient check") {
  Rng rng(2);
  const Field& f4 = Field::parse("gf4");
  const MatrixSubspace w = random_subspace(rng, f4, 3, 3);
  CHECK(subspace_from_json(subspace_to_json(w)) == w);
  json j = subspace_to_json(coordinate_space(f4, BipartiteSupport(2, {{1, 1}})));
  j["ambient"] = {{"n", 2}, {"pairs", {{1, 2}}}};
  CHECK_ERROR_CODE(subspace_from_json(j), InvalidInput);
  CHECK_ERROR_CODE(subspace_from_json(json::parse(R"({"field":"gf3"})")), InvalidInput);
}
