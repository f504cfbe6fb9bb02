#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "boundrank/json_io.hpp"
#include "boundrank/kernels.hpp"
#include "boundrank/random.hpp"

namespace boundrank {

enum class Verdict { confirmed, refuted, budget_exceeded };

const char* verdict_name(Verdict v);

/// Outcome of one verifier call. A refuted verdict always carries a
/// certificate (a subspace, matrix, or edge set) that raw member scans or
/// the exhaustive oracles can re-check on their own.
struct VerdictReport {
  std::string statement;
  json instance;
  long long lhs = 0;
  long long rhs = 0;
  json witnesses = json::object();
  std::chrono::nanoseconds elapsed{0};
  Verdict verdict = Verdict::confirmed;

  bool confirmed() const { return verdict == Verdict::confirmed; }
  /// Elapsed time is wall-clock dependent, so it is only emitted on request.
  json to_json(bool with_timing = false) const;
};

struct VerifyOptions {
  std::uint64_t budget = kDefaultBudget;
  int jobs = 1;
  /// Skip the leading-support certificates and certify every subspace by a raw member scan.
  bool full_scan = false;
  /// verify_anyw: also enumerate every optimal subspace and count the coordinate ones.
  bool explore_optimal = false;
  /// check_rwmb / check_rmba: largest projective member count scanned directly.
  std::uint64_t member_scan_limit = 1u << 16;
};

/// Runs fn and turns a BudgetExceeded into a budget-exceeded report.
template <typename Fn>
VerdictReport guarded(const std::string& statement, const json& instance, Fn&& fn) {
  try {
    return fn();
  } catch (const BudgetExceeded& e) {
    VerdictReport r;
    r.statement = statement;
    r.instance = instance;
    r.verdict = Verdict::budget_exceeded;
    r.witnesses = {{"required", e.count()}, {"budget", e.budget()}, {"message", e.what()}};
    return r;
  }
}

// ---------------------------------------------------------------------------
// rho_omega(W) >= nu_b(B(W)) and its constructive witness.

struct NullstellensatzWitness {
  bool found = false;
  std::vector<int> lambda;  // per input matrix, in {0, 1}, applied to the rescaled matrices
  IndexSet rows;
  IndexSet cols;
  std::vector<int> pi;  // 0-based, cols sorted: j_pi(1) < ... < j_pi(k)
  Elem value{};
  /// Coefficient of x_1...x_k in g(x) = D_omega(sum x_t C_t), by inclusion-exclusion over {0,1}^k.
  Elem top_coefficient{};
  /// omega(pi^{-1}).
  Elem expected_coefficient{};
  std::optional<Matrix> member;  // sum lambda_t A_t / A_t(q(A_t))
};

/// The matrices' lex-leading positions must form a bipartite matching;
/// they are reordered by row and rescaled to a unit leading entry before
/// the search over lambda in {0,1}^k (bitmask order, lambda_1 lowest).
NullstellensatzWitness nullstellensatz_witness(std::span<const Matrix> basis, const WeightFn& omega);
json to_json(const NullstellensatzWitness& w);

VerdictReport check_mainp(const MatrixSubspace& w, const WeightFn& omega, const VerifyOptions& opts = {});

// ---------------------------------------------------------------------------
// max dim under a rank bound vs max edges under a matching bound.

VerdictReport verify_anyw(const BipartiteSupport& b, int k, const WeightFn& omega, const VerifyOptions& opts = {});
VerdictReport verify_anygr(const GraphSupport& g, int k, const Field& field, const VerifyOptions& opts = {});
VerdictReport check_alter(const MatrixSubspace& u, const VerifyOptions& opts = {});

struct MaxDimResult {
  int dim = 0;
  std::optional<MatrixSubspace> witness;
  std::uint64_t subspaces_examined = 0;
};

/// Exhaustive max{dim W : W <= ambient, every member has rank <= bound},
/// scanning dimensions from the top.
MaxDimResult max_feasible_dim(const Ambient& ambient, const RankFunction& rank, int bound,
                              const VerifyOptions& opts = {});

GraphSupport reduce_bipartite_to_graph(const BipartiteSupport& b);
VerdictReport verify_reduction_equalities(const BipartiteSupport& b, int k, const Field& field,
                                          const VerifyOptions& opts = {});

// ---------------------------------------------------------------------------
// rho_omega(M_B) = nu_b(B) and rho(A_G) = 2 nu(G).

/// omega-rank of the generic member of M_B: the largest m such that
/// D_omega of some m x m block is a nonzero polynomial in the support
/// variables. Distinct permutations give distinct monomials with nonzero
/// coefficients omega(sigma), so this asks for a supported permutation.
int generic_omega_rank(const BipartiteSupport& b, const WeightFn& omega);
/// Rank of the generic member of A_G: twice the largest m such that the
/// Pfaffian of some principal 2m block has a supported perfect matching.
int generic_rank_alt(const GraphSupport& g);

VerdictReport check_rwmb(const BipartiteSupport& b, const WeightFn& omega, const VerifyOptions& opts = {});
VerdictReport check_rmba(const GraphSupport& g, const Field& field, const VerifyOptions& opts = {});

/// det(A) = pf(A)^2 for an alternating matrix of even order.
VerdictReport check_pfaffian(const Matrix& a);

// ---------------------------------------------------------------------------
// Equality cases for permanental rank.

struct ExtremalClass {
  enum class Kind { row_type, col_type, not_extremal, counterexample };
  Kind kind = Kind::not_extremal;
  IndexSet index_set;
  int dim = 0;
  int rho_one = 0;
  std::string reason;
};

const char* extremal_kind_name(ExtremalClass::Kind k);

/// Requires char F != 2, n >= 3, 1 <= k <= n. At k = n the full space is
/// reported as row-type([n]).
ExtremalClass classify_extremal_perrank(const MatrixSubspace& w, int k, const VerifyOptions& opts = {});

/// W_u = {[[a x, a y], [-b x, b y]]} for u = (a, b) != 0.
MatrixSubspace w_u_space(const Field& field, Elem a, Elem b);
/// Enumerates all 2-dim subspaces of M_2(F) and checks that the ones with
/// rho_one = 1 are exactly {W_u, W_u^t}. Requires char F != 2.
VerdictReport verify_w_u_classification(const Field& field, const VerifyOptions& opts = {});

/// lambda_{ijl} for (i, j, l) in [k] x [k+1] x [k+1], i.e. the basis
/// A_ij = e_i (x) e_j + sum_l lambda_ijl e_{k+1} (x) e_l of U <= M_{k+1}(F).
struct KkpoAssignment {
  int k = 2;
  std::vector<std::uint8_t> lambda;

  KkpoAssignment() = default;
  explicit KkpoAssignment(int k_) : k(k_), lambda(static_cast<std::size_t>(k_ * (k_ + 1) * (k_ + 1)), 0) {}
  std::uint8_t& at(int i, int j, int l) { return lambda[index(i, j, l)]; }
  std::uint8_t at(int i, int j, int l) const { return lambda[index(i, j, l)]; }
  bool all_zero() const;

 private:
  std::size_t index(int i, int j, int l) const {
    return static_cast<std::size_t>(((i - 1) * (k + 1) + (j - 1)) * (k + 1) + (l - 1));
  }
};

/// A_ij in the order (1,1), (1,2), ..., (k, k+1).
std::vector<Matrix> kkpo_basis(const KkpoAssignment& a, const Field& field);
json to_json(const KkpoAssignment& a);
KkpoAssignment kkpo_from_json(const json& j, const Field& field);
KkpoAssignment random_kkpo_assignment(Rng& rng, const Field& field, int k);

/// All-zero lambda: rho_one(U) = k. Otherwise: a member with nonzero
/// (k+1) x (k+1) permanent, tried first among the structured candidates
/// C_theta and C, then by member scan. Requires k >= 2 and |F| >= 3; over
/// characteristic 2 the conclusion can fail and the report says so.
VerdictReport check_kkpo_contrapositive(const KkpoAssignment& a, const Field& field, const VerifyOptions& opts = {});

/// U (x) F^n (or F^n (x) U when `transpose`), for linearly independent u's.
MatrixSubspace fm_witness(const std::vector<Vector>& u_basis, int n, bool transpose = false);

}  // namespace boundrank
