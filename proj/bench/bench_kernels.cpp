// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "boundrank/kernels.hpp"
#include "boundrank/random.hpp"

using namespace boundrank;

namespace {

const WeightFn& perm_weight() {
  static const WeightFn w = WeightFn::one(Field::parse("gf3"));
  return w;
}

MatrixSubspace bench_space() {
  Rng rng(1);
  return coordinate_space(Field::parse("gf3"), random_bipartite(rng, 5));
}

void BM_MaxMemberRank(benchmark::State& state) {
  Rng rng(7);
  const MatrixSubspace w = random_subspace(rng, Field::parse("gf3"), 4, 7);
  const RankFunction rank = RankFunction::omega(perm_weight());
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const int r = jobs == 0 ? kernels::max_member_rank_serial(w, rank, kDefaultBudget)
                            : kernels::max_member_rank_parallel(w, rank, kDefaultBudget, jobs);
    benchmark::DoNotOptimize(r);
  }
}

void BM_FindMemberMiss(benchmark::State& state) {
  // no member exceeds the bound, so the whole space is scanned
  const MatrixSubspace w = bench_space();
  const RankFunction rank = RankFunction::omega(perm_weight());
  const int jobs = static_cast<int>(state.range(0));
  auto pred = [&](const Matrix& m) { return rank.exceeds(m, 5); };
  for (auto _ : state) {
    auto hit = jobs == 0 ? kernels::find_member_serial(w, true, kDefaultBudget, pred)
                         : kernels::find_member_parallel(w, true, kDefaultBudget, pred, jobs);
    benchmark::DoNotOptimize(hit);
  }
}

void BM_ScanSubspaces(benchmark::State& state) {
  const Field& f2 = Field::parse("gf2");
  static const WeightFn one = WeightFn::one(f2);
  const RankFunction rank = RankFunction::omega(one);
  const SubspaceEnumerator e(Ambient::of(f2, BipartiteSupport::full(3)), 4);
  const kernels::SubspaceCheck check = [&](const MatrixSubspace& w) {
    return kernels::find_member_serial(w, true, kDefaultBudget, [&](const Matrix& m) { return rank.exceeds(m, 1); })
               ? kernels::Certificate::scan
               : kernels::Certificate::none;
  };
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto s = jobs == 0 ? kernels::scan_subspaces_serial(e, check) : kernels::scan_subspaces_parallel(e, check, jobs);
    benchmark::DoNotOptimize(s);
  }
}

}  // namespace

// Arg 0 is the serial reference; positive args are OpenMP worker counts.
BENCHMARK(BM_MaxMemberRank)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FindMemberMiss)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanSubspaces)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
