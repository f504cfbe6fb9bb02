#include "boundrank/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace boundrank {

int RankFunction::rank(const Matrix& a) const {
  if (!uses_elimination()) return omega_rank(a, *omega_);
  return a.field().kind() == FieldKind::gf2 ? gauss_rank_gf2_packed(a) : gauss_rank(a);
}

bool RankFunction::exceeds(const Matrix& a, int k) const {
  if (!uses_elimination()) return omega_rank_exceeds(a, *omega_, k);
  return rank(a) > k;
}

namespace kernels {

namespace {

void set_threads(int jobs) {
#ifdef _OPENMP
  omp_set_num_threads(std::max(jobs, 1));
#else
  (void)jobs;
#endif
}

// Exceptions must not cross an OpenMP region; the first one is kept and
// rethrown after the join.
class ExceptionSlot {
 public:
  template <typename Fn>
  void run(Fn&& fn) {
    try {
      fn();
    } catch (...) {
      std::lock_guard lock(mu_);
      if (!ptr_) ptr_ = std::current_exception();
    }
  }
  void rethrow() {
    if (ptr_) std::rethrow_exception(ptr_);
  }

 private:
  std::mutex mu_;
  std::exception_ptr ptr_;
};

}  // namespace

ScanSummary scan_subspaces_serial(const SubspaceEnumerator& e, const SubspaceCheck& check) {
  ScanSummary s;
  s.total = e.count();
  for (std::uint64_t idx = 0; idx < s.total; ++idx) {
    switch (check(e.at(idx))) {
      case Certificate::fast: ++s.fast; break;
      case Certificate::scan: ++s.scan; break;
      case Certificate::none:
        ++s.none;
        if (!s.first_none) s.first_none = idx;
        break;
    }
  }
  return s;
}

ScanSummary scan_subspaces_parallel(const SubspaceEnumerator& e, const SubspaceCheck& check, int jobs) {
  const auto total = static_cast<std::int64_t>(e.count());
  std::uint64_t fast = 0;
  std::uint64_t scan = 0;
  std::uint64_t none = 0;
  std::uint64_t first_none = std::numeric_limits<std::uint64_t>::max();
  ExceptionSlot errors;
  set_threads(jobs);
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : fast, scan, none) reduction(min : first_none)
  for (std::int64_t idx = 0; idx < total; ++idx) {
    errors.run([&] {
      switch (check(e.at(static_cast<std::uint64_t>(idx)))) {
        case Certificate::fast: ++fast; break;
        case Certificate::scan: ++scan; break;
        case Certificate::none:
          ++none;
          first_none = std::min(first_none, static_cast<std::uint64_t>(idx));
          break;
      }
    });
  }
  errors.rethrow();
  ScanSummary s{static_cast<std::uint64_t>(total), fast, scan, none, std::nullopt};
  if (none > 0) s.first_none = first_none;
  return s;
}

ScanSummary scan_subspaces(const SubspaceEnumerator& e, const SubspaceCheck& check, int jobs) {
  return jobs <= 1 ? scan_subspaces_serial(e, check) : scan_subspaces_parallel(e, check, jobs);
}

std::optional<std::uint64_t> find_subspace_serial(const SubspaceEnumerator& e, const SubspacePredicate& pred) {
  for (std::uint64_t idx = 0; idx < e.count(); ++idx)
    if (pred(e.at(idx))) return idx;
  return std::nullopt;
}

std::optional<std::uint64_t> find_subspace_parallel(const SubspaceEnumerator& e, const SubspacePredicate& pred,
                                                    int jobs) {
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  ExceptionSlot errors;
  set_threads(jobs);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(e.count()); ++idx) {
    const auto u = static_cast<std::uint64_t>(idx);
    if (u > best.load(std::memory_order_relaxed)) continue;
    errors.run([&] {
      if (pred(e.at(u))) {
        std::uint64_t cur = best.load();
        while (u < cur && !best.compare_exchange_weak(cur, u)) {
        }
      }
    });
  }
  errors.rethrow();
  const std::uint64_t b = best.load();
  if (b == std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return b;
}

std::optional<std::uint64_t> find_subspace(const SubspaceEnumerator& e, const SubspacePredicate& pred, int jobs) {
  return jobs <= 1 ? find_subspace_serial(e, pred) : find_subspace_parallel(e, pred, jobs);
}

Matrix member_at(const MatrixSubspace& w, bool projective, std::uint64_t index) {
  Matrix m(w.field(), w.n(), w.n());
  std::vector<std::uint8_t> coeffs(std::max(w.dim(), 1));
  member_coefficients(w, projective, index, coeffs);
  w.combine(coeffs, m);
  return m;
}

std::optional<std::uint64_t> find_member_serial(const MatrixSubspace& w, bool projective, std::uint64_t budget,
                                                const MemberPredicate& pred) {
  std::optional<std::uint64_t> found;
  std::uint64_t idx = 0;
  for_each_member(w, projective, budget, [&](const Matrix& m) {
    if (pred(m)) {
      found = idx;
      return false;
    }
    ++idx;
    return true;
  });
  return found;
}

std::optional<std::uint64_t> find_member_parallel(const MatrixSubspace& w, bool projective, std::uint64_t budget,
                                                  const MemberPredicate& pred, int jobs) {
  const std::uint64_t count = member_count(w, projective);
  if (count > budget) throw BudgetExceeded(count, budget, "member enumeration");
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  ExceptionSlot errors;
  set_threads(jobs);
#pragma omp parallel
  {
    Matrix m(w.field(), w.n(), w.n());
    std::vector<std::uint8_t> coeffs(std::max(w.dim(), 1));
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(count); ++idx) {
      const auto u = static_cast<std::uint64_t>(idx);
      if (u > best.load(std::memory_order_relaxed)) continue;
      errors.run([&] {
        member_coefficients(w, projective, u, coeffs);
        w.combine(coeffs, m);
        if (pred(m)) {
          std::uint64_t cur = best.load();
          while (u < cur && !best.compare_exchange_weak(cur, u)) {
          }
        }
      });
    }
  }
  errors.rethrow();
  const std::uint64_t b = best.load();
  if (b == std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return b;
}

std::optional<std::uint64_t> find_member(const MatrixSubspace& w, bool projective, std::uint64_t budget,
                                         const MemberPredicate& pred, int jobs) {
  return jobs <= 1 ? find_member_serial(w, projective, budget, pred)
                   : find_member_parallel(w, projective, budget, pred, jobs);
}

int max_member_rank_serial(const MatrixSubspace& w, const RankFunction& rank, std::uint64_t budget) {
  int best = 0;
  for_each_member(w, true, budget, [&](const Matrix& m) {
    best = std::max(best, rank.rank(m));
    return best < w.n();
  });
  return best;
}

int max_member_rank_parallel(const MatrixSubspace& w, const RankFunction& rank, std::uint64_t budget, int jobs) {
  const std::uint64_t count = member_count(w, true);
  if (count > budget) throw BudgetExceeded(count, budget, "member enumeration");
  if (w.dim() == 0) return 0;
  std::atomic<int> best{0};
  ExceptionSlot errors;
  const int cap = w.n();
  set_threads(jobs);
#pragma omp parallel
  {
    Matrix m(w.field(), w.n(), w.n());
    std::vector<std::uint8_t> coeffs(std::max(w.dim(), 1));
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(count); ++idx) {
      if (best.load(std::memory_order_relaxed) >= cap) continue;
      errors.run([&] {
        member_coefficients(w, true, static_cast<std::uint64_t>(idx), coeffs);
        w.combine(coeffs, m);
        const int r = rank.rank(m);
        int cur = best.load();
        while (r > cur && !best.compare_exchange_weak(cur, r)) {
        }
      });
    }
  }
  errors.rethrow();
  return best.load();
}

int max_member_rank(const MatrixSubspace& w, const RankFunction& rank, std::uint64_t budget, int jobs) {
  return jobs <= 1 ? max_member_rank_serial(w, rank, budget) : max_member_rank_parallel(w, rank, budget, jobs);
}

}  // namespace kernels
}  // namespace boundrank
