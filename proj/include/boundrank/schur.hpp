#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "boundrank/matrix.hpp"

namespace boundrank {

enum class WeightKind { sgn, one, table, random };

/// A nonzero weight on every permutation of degree 1..max_degree, stored as
/// one table per degree indexed by the lexicographic rank of the permutation.
class WeightFn {
 public:
  static constexpr int kDefaultMaxDegree = 8;

  static WeightFn sgn(const Field& field, int max_degree = kDefaultMaxDegree);
  static WeightFn one(const Field& field, int max_degree = kDefaultMaxDegree);
  /// Values drawn uniformly from F* per permutation; a pure function of
  /// (seed, field, max_degree).
  static WeightFn random(const Field& field, std::uint64_t seed, int max_degree = kDefaultMaxDegree);
  /// values[d - 1] holds the d! canonical values for degree d.
  static WeightFn from_tables(const Field& field, const std::vector<std::vector<int>>& values);
  /// "sgn" | "one" | "random:<seed>".
  static WeightFn parse(const Field& field, std::string_view spec, int max_degree = kDefaultMaxDegree);

  WeightKind kind() const { return kind_; }
  const std::string& spec() const { return spec_; }
  const Field& field() const { return *field_; }
  int max_degree() const { return static_cast<int>(tables_.size()); }

  /// perm is a 0-based permutation of {0..m-1}.
  Elem at(std::span<const int> perm) const;
  std::span<const std::uint8_t> table(int degree) const;

 private:
  WeightFn(const Field& field, WeightKind kind, std::string spec) : field_(&field), kind_(kind), spec_(std::move(spec)) {}

  const Field* field_;
  WeightKind kind_;
  std::string spec_;
  std::vector<std::vector<std::uint8_t>> tables_;
};

/// Sum over sigma of omega(sigma) * prod_i A(i, sigma(i)), by permutation
/// expansion with pruning on zero entries.
Elem d_omega(const Matrix& a, const WeightFn& omega);
/// Same expansion over a k x k row-major block of raw values.
std::uint8_t d_omega_raw(const std::uint8_t* block, int k, const WeightFn& omega);

Elem permanent_ryser(const Matrix& a);
Elem determinant_elim(const Matrix& a);

/// Pairs {i_t < j_t} (1-based) listed with i_1 < ... < i_k.
struct PerfectMatching {
  std::vector<std::pair<int, int>> pairs;
  bool operator==(const PerfectMatching&) const = default;
};

/// All perfect matchings of K_{order}, order even.
std::vector<PerfectMatching> perfect_matchings(int order);
/// Sign of the permutation (i_1 j_1 ... i_k j_k).
int matching_sign(const PerfectMatching& m);
/// Signed perfect-matching expansion. Requires an alternating matrix of even order.
Elem pfaffian(const Matrix& a);

/// Largest k with a k x k submatrix of nonzero D_omega; 0 for the zero matrix.
int omega_rank(const Matrix& a, const WeightFn& omega);
/// True iff some submatrix of order > k has nonzero D_omega.
bool omega_rank_exceeds(const Matrix& a, const WeightFn& omega, int k);
int rho_omega_of_list(std::span<const Matrix> list, const WeightFn& omega);

}  // namespace boundrank
