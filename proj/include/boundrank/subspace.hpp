#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "boundrank/schur.hpp"
#include "boundrank/support.hpp"

namespace boundrank {

enum class Flavor { general, alternating };

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// Coordinates of M_n (all n^2 positions) or A_n (positions i < j), listed
/// in lexicographic order on (i, j), so the first nonzero coordinate of a
/// matrix is its lex-leading position q(A).
int coordinate_count(int n, Flavor flavor);
Pair coordinate_position(int n, Flavor flavor, int coord);
int coordinate_index(int n, Flavor flavor, Pair pos);
std::vector<std::uint8_t> to_coordinates(const Matrix& a, Flavor flavor);
void write_coordinates(std::span<const std::uint8_t> coords, Flavor flavor, Matrix& out);

/// q(A) for a nonzero matrix (1-based), lexicographic order.
Pair lex_leading_position(const Matrix& a);

/// A subspace of M_n(F) or A_n(F) held as a reduced echelon basis over the
/// lex-ordered coordinates: pivots strictly increasing, pivot entries 1, and
/// each pivot coordinate zero in every other basis vector.
class MatrixSubspace {
 public:
  static MatrixSubspace canonicalize(const Field& field, int n, Flavor flavor, std::span<const Matrix> matrices);
  static MatrixSubspace zero(const Field& field, int n, Flavor flavor);
  /// Row-reduces arbitrary coordinate vectors.
  static MatrixSubspace from_coordinate_rows(const Field& field, int n, Flavor flavor,
                                             std::vector<std::vector<std::uint8_t>> rows);

  const Field& field() const { return *field_; }
  int n() const { return n_; }
  Flavor flavor() const { return flavor_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  int coordinate_count() const { return boundrank::coordinate_count(n_, flavor_); }

  const std::vector<std::vector<std::uint8_t>>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }
  Matrix basis_matrix(int t) const;
  std::vector<Matrix> basis() const;

  /// sum_t coeffs[t] * basis[t], written into `out` (n x n over this field).
  void combine(std::span<const std::uint8_t> coeffs, Matrix& out) const;
  bool contains(const Matrix& a) const;
  /// Span inclusion: every basis vector of `other` lies in this space.
  bool contains(const MatrixSubspace& other) const;

  /// Pivot positions (i, j) in order.
  std::vector<Pair> pivot_positions() const;

  bool operator==(const MatrixSubspace& other) const {
    return field_->kind() == other.field_->kind() && n_ == other.n_ && flavor_ == other.flavor_ &&
           rows_ == other.rows_;
  }

 private:
  MatrixSubspace(const Field& field, int n, Flavor flavor) : field_(&field), n_(n), flavor_(flavor) {}

  const Field* field_;
  int n_;
  Flavor flavor_;
  std::vector<std::vector<std::uint8_t>> rows_;
  std::vector<int> pivots_;

  friend class SubspaceEnumerator;
};

/// B(W) = {q(A) : A in W}, read off the echelon pivots. General flavor only.
BipartiteSupport leading_support(const MatrixSubspace& w);
/// B_g(U) = {{i, j} : q(A) = (i, j), A in U}. Alternating flavor only.
GraphSupport leading_support_alt(const MatrixSubspace& u);

MatrixSubspace coordinate_space(const Field& field, const BipartiteSupport& b);
MatrixSubspace coordinate_space_alt(const Field& field, const GraphSupport& g);

/// q^dim, or (q^dim - 1)/(q - 1) representatives up to scalar in projective mode.
std::uint64_t member_count(const MatrixSubspace& w, bool projective);

/// Coefficient vector of member `index` in the fixed enumeration order:
/// odometer over the coefficients (last one fastest); projective mode lists
/// vectors whose first nonzero coefficient is 1, grouped by that position.
void member_coefficients(const MatrixSubspace& w, bool projective, std::uint64_t index,
                         std::span<std::uint8_t> coeffs);

/// Calls fn(member) for every member; fn returns false to stop early. The
/// Matrix passed in is reused between calls.
void for_each_member(const MatrixSubspace& w, bool projective, std::uint64_t budget,
                     const std::function<bool(const Matrix&)>& fn);
std::vector<Matrix> enumerate_members(const MatrixSubspace& w, bool projective,
                                      std::uint64_t budget = kDefaultBudget);

/// rho_omega(W): exact maximum omega-rank over members (projective scan).
int rho_omega(const MatrixSubspace& w, const WeightFn& omega, std::uint64_t budget = kDefaultBudget);
/// rho(W): exact maximum rank over members.
int rho(const MatrixSubspace& w, std::uint64_t budget = kDefaultBudget);

/// The coordinate space given by a support, seen as the ambient space of an
/// enumeration.
struct Ambient {
  const Field* field = nullptr;
  int n = 0;
  Flavor flavor = Flavor::general;
  std::vector<int> coords;  // sorted coordinate indices

  static Ambient of(const Field& field, const BipartiteSupport& b);
  static Ambient of(const Field& field, const GraphSupport& g);
  int size() const { return static_cast<int>(coords.size()); }
};

/// Enumerates every d-dimensional subspace of an ambient coordinate space
/// exactly once via its reduced echelon form: pivot sets in colex order,
/// free entries in odometer order. Any index decodes independently, so
/// workers can split the range arbitrarily.
class SubspaceEnumerator {
 public:
  SubspaceEnumerator(Ambient ambient, int d);

  const Ambient& ambient() const { return ambient_; }
  int dim() const { return d_; }
  /// Total count (the Gaussian binomial), saturating at UINT64_MAX.
  std::uint64_t count() const { return count_; }
  MatrixSubspace at(std::uint64_t index) const;
  /// Throws BudgetExceeded if count() > budget.
  void check_budget(std::uint64_t budget, const char* what) const;

 private:
  Ambient ambient_;
  int d_;
  std::vector<std::vector<int>> pivot_sets_;
  std::vector<std::uint64_t> offsets_;  // prefix sums, size pivot_sets_ + 1
  std::uint64_t count_ = 0;
};

}  // namespace boundrank
