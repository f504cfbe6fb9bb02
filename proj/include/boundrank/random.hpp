#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "boundrank/subspace.hpp"

namespace boundrank {

/// Seeded generator with named, index-addressable child streams. A child
/// depends only on (root seed, path of names and indices), never on how
/// many draws the parent has made, so batch instance i is the same whatever
/// the worker count.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::string_view stream = "root");

  Rng split(std::string_view name, std::uint64_t index = 0) const;

  std::mt19937_64& engine() { return engine_; }
  /// Uniform integer in [lo, hi].
  int uniform(int lo, int hi);
  bool coin() { return uniform(0, 1) == 1; }
  std::uint64_t key() const { return key_; }

 private:
  Rng(std::uint64_t key, int);

  std::uint64_t key_;
  std::mt19937_64 engine_;
};

/// Each pair of [n]^2 kept independently with probability 1/2.
BipartiteSupport random_bipartite(Rng& rng, int n);
/// Each edge of K_n kept independently with probability 1/2.
GraphSupport random_graph(Rng& rng, int n);
/// Canonical span of `dim` matrices supported on a random bipartite support,
/// with entries uniform in F; the result may have smaller dimension.
MatrixSubspace random_subspace(Rng& rng, const Field& field, int n, int dim);
MatrixSubspace random_alternating_subspace(Rng& rng, const Field& field, int n, int dim);
Matrix random_matrix(Rng& rng, const Field& field, int n);
Matrix random_alternating(Rng& rng, const Field& field, int n);

}  // namespace boundrank
