#include "boundrank/random.hpp"

#include <vector>

namespace boundrank {

namespace {

// FNV-1a, stable across platforms.
std::uint64_t mix_name(std::uint64_t key, std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ull ^ key;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

std::mt19937_64 make_engine(std::uint64_t key) {
  std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::string_view stream) : Rng(mix_name(seed, stream), 0) {}

Rng::Rng(std::uint64_t key, int) : key_(key), engine_(make_engine(key)) {}

Rng Rng::split(std::string_view name, std::uint64_t index) const {
  std::uint64_t k = mix_name(key_, name);
  k ^= index + 0x9e3779b97f4a7c15ull + (k << 6) + (k >> 2);
  return Rng(k, 0);
}

int Rng::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

BipartiteSupport random_bipartite(Rng& rng, int n) {
  std::vector<Pair> pairs;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (rng.coin()) pairs.push_back({i, j});
  return BipartiteSupport(n, std::move(pairs));
}

GraphSupport random_graph(Rng& rng, int n) {
  std::vector<Pair> edges;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (rng.coin()) edges.push_back({i, j});
  return GraphSupport(n, std::move(edges));
}

Matrix random_matrix(Rng& rng, const Field& field, int n) {
  Matrix m(field, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.set_raw(i, j, static_cast<std::uint8_t>(rng.uniform(0, field.order() - 1)));
  return m;
}

Matrix random_alternating(Rng& rng, const Field& field, int n) {
  Matrix m(field, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const auto v = static_cast<std::uint8_t>(rng.uniform(0, field.order() - 1));
      m.set_raw(i, j, v);
      m.set_raw(j, i, field.raw_neg(v));
    }
  return m;
}

MatrixSubspace random_subspace(Rng& rng, const Field& field, int n, int dim) {
  const BipartiteSupport b = random_bipartite(rng, n);
  std::vector<Matrix> mats;
  for (int t = 0; t < dim; ++t) {
    Matrix m(field, n, n);
    for (const Pair& p : b.pairs())
      m.set_raw(p.i - 1, p.j - 1, static_cast<std::uint8_t>(rng.uniform(0, field.order() - 1)));
    mats.push_back(std::move(m));
  }
  return MatrixSubspace::canonicalize(field, n, Flavor::general, mats);
}

MatrixSubspace random_alternating_subspace(Rng& rng, const Field& field, int n, int dim) {
  const GraphSupport g = random_graph(rng, n);
  std::vector<Matrix> mats;
  for (int t = 0; t < dim; ++t) {
    Matrix m(field, n, n);
    for (const Pair& e : g.edges()) {
      const auto v = static_cast<std::uint8_t>(rng.uniform(0, field.order() - 1));
      m.set_raw(e.i - 1, e.j - 1, v);
      m.set_raw(e.j - 1, e.i - 1, field.raw_neg(v));
    }
    mats.push_back(std::move(m));
  }
  return MatrixSubspace::canonicalize(field, n, Flavor::alternating, mats);
}

}  // namespace boundrank
