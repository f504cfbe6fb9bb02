#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "boundrank/subspace.hpp"

namespace boundrank {

/// Rank function used by member scans: omega-rank for a weight function, or
/// ordinary rank. For omega = sgn the two coincide, and the scan uses
/// elimination (bit-packed over GF(2)) instead of the permutation expansion.
class RankFunction {
 public:
  static RankFunction omega(const WeightFn& w) { return RankFunction(&w); }
  static RankFunction plain() { return RankFunction(nullptr); }

  int rank(const Matrix& a) const;
  bool exceeds(const Matrix& a, int k) const;

 private:
  explicit RankFunction(const WeightFn* w) : omega_(w) {}
  bool uses_elimination() const { return omega_ == nullptr || omega_->kind() == WeightKind::sgn; }

  const WeightFn* omega_;
};

namespace kernels {

/// How a subspace was shown to violate a rank bound.
enum class Certificate : std::uint8_t {
  fast,  // explicit member found through the leading-support construction
  scan,  // explicit member found by a raw member scan
  none,  // no member violates the bound: the subspace is feasible
};

using SubspaceCheck = std::function<Certificate(const MatrixSubspace&)>;

struct ScanSummary {
  std::uint64_t total = 0;
  std::uint64_t fast = 0;
  std::uint64_t scan = 0;
  std::uint64_t none = 0;
  std::optional<std::uint64_t> first_none;  // smallest index with Certificate::none

  bool operator==(const ScanSummary&) const = default;
};

/// Reference loop over every subspace index in order.
ScanSummary scan_subspaces_serial(const SubspaceEnumerator& e, const SubspaceCheck& check);
/// OpenMP version; identical result for any worker count.
ScanSummary scan_subspaces_parallel(const SubspaceEnumerator& e, const SubspaceCheck& check, int jobs);
/// jobs <= 1 runs the serial reference.
ScanSummary scan_subspaces(const SubspaceEnumerator& e, const SubspaceCheck& check, int jobs);

using MemberPredicate = std::function<bool(const Matrix&)>;

/// Smallest member index (in member_coefficients order) satisfying pred.
std::optional<std::uint64_t> find_member_serial(const MatrixSubspace& w, bool projective, std::uint64_t budget,
                                                const MemberPredicate& pred);
std::optional<std::uint64_t> find_member_parallel(const MatrixSubspace& w, bool projective, std::uint64_t budget,
                                                  const MemberPredicate& pred, int jobs);
std::optional<std::uint64_t> find_member(const MatrixSubspace& w, bool projective, std::uint64_t budget,
                                         const MemberPredicate& pred, int jobs);

/// Maximum of rank over projective members; stops early at full rank n.
int max_member_rank_serial(const MatrixSubspace& w, const RankFunction& rank, std::uint64_t budget);
int max_member_rank_parallel(const MatrixSubspace& w, const RankFunction& rank, std::uint64_t budget, int jobs);
int max_member_rank(const MatrixSubspace& w, const RankFunction& rank, std::uint64_t budget, int jobs);

using SubspacePredicate = std::function<bool(const MatrixSubspace&)>;

/// Smallest subspace index satisfying pred.
std::optional<std::uint64_t> find_subspace_serial(const SubspaceEnumerator& e, const SubspacePredicate& pred);
std::optional<std::uint64_t> find_subspace_parallel(const SubspaceEnumerator& e, const SubspacePredicate& pred,
                                                    int jobs);
std::optional<std::uint64_t> find_subspace(const SubspaceEnumerator& e, const SubspacePredicate& pred, int jobs);

/// Member with the given index.
Matrix member_at(const MatrixSubspace& w, bool projective, std::uint64_t index);

}  // namespace kernels
}  // namespace boundrank
