#include "boundrank/theorems.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "boundrank/combinatorics.hpp"

namespace boundrank {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::confirmed: return "confirmed";
    case Verdict::refuted: return "REFUTED";
    case Verdict::budget_exceeded: return "budget-exceeded";
  }
  return "?";
}

json VerdictReport::to_json(bool with_timing) const {
  json j = {{"statement", statement}, {"instance", instance}, {"lhs", lhs},
            {"rhs", rhs},             {"witnesses", witnesses}, {"verdict", verdict_name(verdict)}};
  if (with_timing) j["elapsed_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
  return j;
}

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::chrono::nanoseconds elapsed() const { return std::chrono::steady_clock::now() - start_; }

 private:
  std::chrono::steady_clock::time_point start_;
};

VerdictReport make_report(std::string statement, json instance) {
  VerdictReport r;
  r.statement = std::move(statement);
  r.instance = std::move(instance);
  return r;
}

json elem_json(const Field& f, Elem e) { return f.to_int(e); }

// Basis matrices of w whose pivots are the given positions, in that order.
std::vector<Matrix> basis_at_pivots(const MatrixSubspace& w, std::span<const Pair> positions) {
  const auto piv = w.pivot_positions();
  std::vector<Matrix> out;
  for (const Pair& p : positions) {
    const auto it = std::find(piv.begin(), piv.end(), p);
    out.push_back(w.basis_matrix(static_cast<int>(it - piv.begin())));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

NullstellensatzWitness nullstellensatz_witness(std::span<const Matrix> basis, const WeightFn& omega) {
  const int k = static_cast<int>(basis.size());
  require(k >= 1, ErrorCode::PreconditionViolated, "witness search needs at least one matrix");
  const Field& f = omega.field();
  const int n = basis.front().rows();

  std::vector<Pair> lead(k);
  for (int t = 0; t < k; ++t) {
    require(basis[t].field().kind() == f.kind(), ErrorCode::FieldMismatch, "basis and weight over different fields");
    require(!basis[t].is_zero(), ErrorCode::PreconditionViolated, "zero matrix has no leading position");
    lead[t] = lex_leading_position(basis[t]);
  }
  for (int s = 0; s < k; ++s)
    for (int t = s + 1; t < k; ++t)
      require(lead[s].i != lead[t].i && lead[s].j != lead[t].j, ErrorCode::PreconditionViolated,
              "leading positions do not form a bipartite matching");

  // Reorder so i_1 < ... < i_k and rescale so A_t(i_t, j_t) = 1.
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return lead[a].i < lead[b].i; });
  std::vector<Matrix> scaled;
  std::vector<int> row_idx;
  std::vector<int> col_idx;
  for (int t : order) {
    scaled.push_back(basis[t].scaled(f.inv(basis[t](lead[t].i - 1, lead[t].j - 1))));
    row_idx.push_back(lead[t].i);
    col_idx.push_back(lead[t].j);
  }
  std::vector<int> sorted_cols = col_idx;
  std::sort(sorted_cols.begin(), sorted_cols.end());

  NullstellensatzWitness w;
  w.rows = IndexSet(row_idx);
  w.cols = IndexSet(sorted_cols);
  // pi(s) = t such that j_t is the s-th smallest column.
  w.pi.resize(k);
  for (int s = 0; s < k; ++s)
    w.pi[s] = static_cast<int>(std::find(col_idx.begin(), col_idx.end(), sorted_cols[s]) - col_idx.begin());
  w.expected_coefficient = omega.at(inverse_permutation(w.pi));

  std::vector<Matrix> blocks;
  for (const Matrix& a : scaled) blocks.push_back(submatrix(a, w.rows, w.cols));

  std::uint8_t coefficient = 0;
  std::optional<std::uint32_t> first_mask;
  Elem first_value = f.zero();
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    Matrix g(f, k, k);
    for (int t = 0; t < k; ++t)
      if (mask >> t & 1u) g += blocks[t];
    const Elem value = d_omega(g, omega);
    // sum over lambda of (-1)^(k - |lambda|) g(lambda); g(0) = 0
    const bool negate = ((k - std::popcount(mask)) & 1) != 0;
    coefficient = f.raw_add(coefficient, negate ? f.raw_neg(value.value) : value.value);
    if (!first_mask && !value.is_zero()) {
      first_mask = mask;
      first_value = value;
    }
  }
  w.top_coefficient = {coefficient, f.kind()};
  if (first_mask) {
    w.found = true;
    w.value = first_value;
    w.lambda.assign(k, 0);
    Matrix member(f, n, n);
    for (int t = 0; t < k; ++t)
      if (*first_mask >> t & 1u) {
        w.lambda[order[t]] = 1;
        member += scaled[t];
      }
    w.member = member;
  }
  return w;
}

json to_json(const NullstellensatzWitness& w) {
  const Field& f = Field::get(w.expected_coefficient.field);
  json j = {{"found", w.found},
            {"I", to_json(w.rows)},
            {"J", to_json(w.cols)},
            {"pi", w.pi},
            {"top_coefficient", elem_json(f, w.top_coefficient)},
            {"omega_pi_inverse", elem_json(f, w.expected_coefficient)}};
  if (w.found) {
    j["lambda"] = w.lambda;
    j["value"] = elem_json(f, w.value);
    j["member"] = matrix_to_json(*w.member);
  }
  return j;
}

VerdictReport check_mainp(const MatrixSubspace& w, const WeightFn& omega, const VerifyOptions& opts) {
  require(w.flavor() == Flavor::general, ErrorCode::InvalidInput, "check_mainp needs a general subspace");
  Stopwatch clock;
  VerdictReport r = make_report("mainp", {{"subspace", subspace_to_json(w)}, {"omega", omega.spec()}});
  const BipartiteSupport lead = leading_support(w);
  const MatchingResult mm = nu_bipartite(lead);
  r.rhs = mm.size;
  r.lhs = kernels::max_member_rank(w, RankFunction::omega(omega), opts.budget, opts.jobs);
  r.witnesses["leading_support"] = to_json(lead);
  bool ok = r.lhs >= r.rhs;
  if (mm.size > 0) {
    const auto chosen = basis_at_pivots(w, mm.matching);
    const NullstellensatzWitness nw = nullstellensatz_witness(chosen, omega);
    r.witnesses["nullstellensatz"] = to_json(nw);
    ok = ok && nw.found && nw.top_coefficient == nw.expected_coefficient;
  }
  r.verdict = ok ? Verdict::confirmed : Verdict::refuted;
  r.elapsed = clock.elapsed();
  return r;
}

// ---------------------------------------------------------------------------

namespace {

// Certificate that a general subspace has omega-rank > k somewhere.
kernels::Certificate certify_exceeds_general(const MatrixSubspace& w, const WeightFn& omega, int k,
                                              const VerifyOptions& opts) {
  if (!opts.full_scan) {
    const MatchingResult mm = nu_bipartite(leading_support(w));
    if (mm.size > k) {
      std::vector<Pair> pick(mm.matching.begin(), mm.matching.begin() + (k + 1));
      const NullstellensatzWitness nw = nullstellensatz_witness(basis_at_pivots(w, pick), omega);
      if (nw.found && !d_omega(submatrix(*nw.member, nw.rows, nw.cols), omega).is_zero())
        return kernels::Certificate::fast;
    }
  }
  const RankFunction rank = RankFunction::omega(omega);
  const auto hit = kernels::find_member_serial(w, true, opts.budget, [&](const Matrix& m) { return rank.exceeds(m, k); });
  return hit ? kernels::Certificate::scan : kernels::Certificate::none;
}

// Certificate that an alternating subspace has rank > 2k somewhere.
kernels::Certificate certify_exceeds_alt(const MatrixSubspace& u, int k, const VerifyOptions& opts) {
  const RankFunction rank = RankFunction::plain();
  if (!opts.full_scan) {
    const MatchingResult mm = max_matching_blossom(leading_support_alt(u));
    if (mm.size > k) {
      std::vector<Pair> pick(mm.matching.begin(), mm.matching.begin() + (k + 1));
      const auto chosen = basis_at_pivots(u, pick);
      for (std::uint32_t mask = 1; mask < (1u << (k + 1)); ++mask) {
        Matrix m(u.field(), u.n(), u.n());
        for (int t = 0; t <= k; ++t)
          if (mask >> t & 1u) m += chosen[t];
        if (rank.exceeds(m, 2 * k)) return kernels::Certificate::fast;
      }
    }
  }
  const auto hit =
      kernels::find_member_serial(u, true, opts.budget, [&](const Matrix& m) { return rank.exceeds(m, 2 * k); });
  return hit ? kernels::Certificate::scan : kernels::Certificate::none;
}

json summary_json(const kernels::ScanSummary& s) {
  return {{"subspaces", s.total}, {"fast_certificates", s.fast}, {"scan_certificates", s.scan}, {"feasible", s.none}};
}

bool is_coordinate_subspace(const MatrixSubspace& w) {
  for (const auto& row : w.rows())
    if (std::count_if(row.begin(), row.end(), [](std::uint8_t v) { return v != 0; }) != 1) return false;
  return true;
}

}  // namespace

VerdictReport verify_anyw(const BipartiteSupport& b, int k, const WeightFn& omega, const VerifyOptions& opts) {
  const Field& f = omega.field();
  const json instance = {{"field", f.name()}, {"omega", omega.spec()}, {"k", k}, {"support", to_json(b)}};
  return guarded("anyw", instance, [&] {
    Stopwatch clock;
    VerdictReport r = make_report("anyw", instance);
    const BipartiteMaxEdges best = max_edges_bounded_nu_bipartite(b, k);
    r.rhs = best.size;
    const Ambient ambient = Ambient::of(f, b);

    // Lower bound: the coordinate space of an optimal B'.
    const MatrixSubspace lower = coordinate_space(f, BipartiteSupport(ambient.n, best.witness.pairs()));
    const int lower_rho = kernels::max_member_rank(lower, RankFunction::omega(omega), opts.budget, opts.jobs);
    r.witnesses["lower"] = {{"support", to_json(best.witness)}, {"dim", lower.dim()}, {"rho_omega", lower_rho}};
    if (lower_rho > k) {
      r.verdict = Verdict::refuted;
      r.lhs = -1;
      r.witnesses["counterexample"] = {{"kind", "lower-bound witness exceeds k"}, {"subspace", subspace_to_json(lower)}};
      r.elapsed = clock.elapsed();
      return r;
    }

    // Upper bound: every (rhs+1)-dim subspace breaks the bound.
    r.lhs = r.rhs;
    const int d = r.rhs + 1;
    if (d <= ambient.size()) {
      SubspaceEnumerator e(ambient, d);
      e.check_budget(opts.budget, "anyw upper-bound enumeration");
      const auto summary = kernels::scan_subspaces(
          e, [&](const MatrixSubspace& w) { return certify_exceeds_general(w, omega, k, opts); }, opts.jobs);
      r.witnesses["upper"] = summary_json(summary);
      r.witnesses["upper"]["dim"] = d;
      if (summary.first_none) {
        r.verdict = Verdict::refuted;
        r.lhs = d;
        r.witnesses["counterexample"] = {{"kind", "feasible subspace above rhs"},
                                         {"subspace", subspace_to_json(e.at(*summary.first_none))}};
      }
    } else {
      r.witnesses["upper"] = {{"subspaces", 0}, {"dim", d}};
    }

    if (opts.explore_optimal && r.rhs > 0 && r.confirmed()) {
      SubspaceEnumerator e(ambient, r.rhs);
      e.check_budget(opts.budget, "anyw optimal-subspace exploration");
      std::uint64_t optimal = 0;
      std::uint64_t coordinate = 0;
      const RankFunction rank = RankFunction::omega(omega);
      for (std::uint64_t idx = 0; idx < e.count(); ++idx) {
        const MatrixSubspace w = e.at(idx);
        if (kernels::find_member_serial(w, true, opts.budget, [&](const Matrix& m) { return rank.exceeds(m, k); }))
          continue;
        ++optimal;
        if (is_coordinate_subspace(w)) ++coordinate;
      }
      r.witnesses["optimal"] = {{"count", optimal}, {"coordinate", coordinate}};
    }
    r.elapsed = clock.elapsed();
    return r;
  });
}

VerdictReport verify_anygr(const GraphSupport& g, int k, const Field& field, const VerifyOptions& opts) {
  const json instance = {{"field", field.name()}, {"k", k}, {"support", to_json(g)}};
  return guarded("anygr", instance, [&] {
    Stopwatch clock;
    VerdictReport r = make_report("anygr", instance);
    const GraphMaxEdges best = max_edges_bounded_nu_general(g, k);
    r.rhs = best.size;
    const Ambient ambient = Ambient::of(field, g);

    const MatrixSubspace lower = coordinate_space_alt(field, GraphSupport(ambient.n, best.witness.edges()));
    const int lower_rho = kernels::max_member_rank(lower, RankFunction::plain(), opts.budget, opts.jobs);
    r.witnesses["lower"] = {{"support", to_json(best.witness)}, {"dim", lower.dim()}, {"rho", lower_rho}};
    if (lower_rho > 2 * k) {
      r.verdict = Verdict::refuted;
      r.lhs = -1;
      r.witnesses["counterexample"] = {{"kind", "lower-bound witness exceeds 2k"},
                                       {"subspace", subspace_to_json(lower)}};
      r.elapsed = clock.elapsed();
      return r;
    }

    r.lhs = r.rhs;
    const int d = r.rhs + 1;
    if (d <= ambient.size()) {
      SubspaceEnumerator e(ambient, d);
      e.check_budget(opts.budget, "anygr upper-bound enumeration");
      const auto summary = kernels::scan_subspaces(
          e, [&](const MatrixSubspace& u) { return certify_exceeds_alt(u, k, opts); }, opts.jobs);
      r.witnesses["upper"] = summary_json(summary);
      r.witnesses["upper"]["dim"] = d;
      if (summary.first_none) {
        r.verdict = Verdict::refuted;
        r.lhs = d;
        r.witnesses["counterexample"] = {{"kind", "feasible subspace above rhs"},
                                         {"subspace", subspace_to_json(e.at(*summary.first_none))}};
      }
    } else {
      r.witnesses["upper"] = {{"subspaces", 0}, {"dim", d}};
    }
    r.elapsed = clock.elapsed();
    return r;
  });
}

VerdictReport check_alter(const MatrixSubspace& u, const VerifyOptions& opts) {
  require(u.flavor() == Flavor::alternating, ErrorCode::NotAlternating, "check_alter needs an alternating subspace");
  Stopwatch clock;
  VerdictReport r = make_report("alter", {{"subspace", subspace_to_json(u)}});
  const GraphSupport lead = leading_support_alt(u);
  r.rhs = 2LL * nu_general(lead).size;
  r.lhs = kernels::max_member_rank(u, RankFunction::plain(), opts.budget, opts.jobs);
  r.witnesses["leading_support"] = to_json(lead);
  r.verdict = r.lhs >= r.rhs ? Verdict::confirmed : Verdict::refuted;
  r.elapsed = clock.elapsed();
  return r;
}

MaxDimResult max_feasible_dim(const Ambient& ambient, const RankFunction& rank, int bound, const VerifyOptions& opts) {
  MaxDimResult result;
  for (int d = ambient.size(); d >= 0; --d) {
    SubspaceEnumerator e(ambient, d);
    e.check_budget(opts.budget, "max-dimension enumeration");
    const auto hit = kernels::find_subspace(
        e,
        [&](const MatrixSubspace& w) {
          return !kernels::find_member_serial(w, true, opts.budget,
                                              [&](const Matrix& m) { return rank.exceeds(m, bound); });
        },
        opts.jobs);
    result.subspaces_examined = sat_add(result.subspaces_examined, hit ? *hit + 1 : e.count());
    if (hit) {
      result.dim = d;
      result.witness = e.at(*hit);
      return result;
    }
  }
  return result;
}

GraphSupport reduce_bipartite_to_graph(const BipartiteSupport& b) {
  std::vector<Pair> edges;
  for (const Pair& p : b.pairs()) edges.push_back({p.i, p.j + b.n()});
  return GraphSupport(2 * b.n(), std::move(edges));
}

VerdictReport verify_reduction_equalities(const BipartiteSupport& b, int k, const Field& field,
                                          const VerifyOptions& opts) {
  const json instance = {{"field", field.name()}, {"k", k}, {"support", to_json(b)}};
  return guarded("reduction", instance, [&] {
    Stopwatch clock;
    VerdictReport r = make_report("reduction", instance);
    const GraphSupport g = reduce_bipartite_to_graph(b);
    const MaxDimResult dim_b = max_feasible_dim(Ambient::of(field, b), RankFunction::plain(), k, opts);
    const MaxDimResult dim_g = max_feasible_dim(Ambient::of(field, g), RankFunction::plain(), 2 * k, opts);
    const int edges_b = max_edges_bounded_nu_bipartite(b, k).size;
    const int edges_g = max_edges_bounded_nu_general(g, k).size;
    const int nu_b = nu_bipartite(b).size;
    const int nu_g = nu_general(g).size;
    r.lhs = dim_b.dim;
    r.rhs = edges_b;
    r.witnesses = {{"graph", to_json(g)},
                   {"max_dim_bipartite", dim_b.dim},
                   {"max_dim_alternating", dim_g.dim},
                   {"max_edges_bipartite", edges_b},
                   {"max_edges_graph", edges_g},
                   {"nu_b", nu_b},
                   {"nu_graph", nu_g}};
    const bool ok = dim_b.dim == dim_g.dim && edges_b == edges_g && nu_b == nu_g;
    r.verdict = ok ? Verdict::confirmed : Verdict::refuted;
    r.elapsed = clock.elapsed();
    return r;
  });
}

// ---------------------------------------------------------------------------

int generic_omega_rank(const BipartiteSupport& b, const WeightFn& omega) {
  const int n = b.n();
  std::array<std::uint8_t, kMaxMatrixDim * kMaxMatrixDim> block{};
  for (int m = std::min(n, omega.max_degree()); m >= 1; --m) {
    bool found = false;
    for_each_combination(n, m, [&](std::span<const int> ri) {
      for_each_combination(n, m, [&](std::span<const int> ci) {
        for (int x = 0; x < m; ++x)
          for (int y = 0; y < m; ++y) block[x * m + y] = b.contains({ri[x] + 1, ci[y] + 1}) ? 1 : 0;
        // Walk the supported permutations; the coefficient of each monomial is omega(sigma).
        std::vector<int> perm(m);
        auto dfs = [&](auto&& self, int row, unsigned used) -> bool {
          if (row == m) return !omega.at(perm).is_zero();
          for (int c = 0; c < m; ++c) {
            if ((used >> c & 1u) || block[row * m + c] == 0) continue;
            perm[row] = c;
            if (self(self, row + 1, used | (1u << c))) return true;
          }
          return false;
        };
        found = dfs(dfs, 0, 0);
        return !found;
      });
      return !found;
    });
    if (found) return m;
  }
  return 0;
}

int generic_rank_alt(const GraphSupport& g) {
  // A principal block A[I|I] has a nonzero Pfaffian polynomial iff some
  // perfect matching of I is supported; the best I is a maximum matching.
  return 2 * max_matching_exhaustive(g).size;
}

VerdictReport check_rwmb(const BipartiteSupport& b, const WeightFn& omega, const VerifyOptions& opts) {
  const Field& f = omega.field();
  const json instance = {{"field", f.name()}, {"omega", omega.spec()}, {"support", to_json(b)}};
  return guarded("rwmb", instance, [&] {
    Stopwatch clock;
    VerdictReport r = make_report("rwmb", instance);
    const MatchingResult mm = nu_bipartite(b);
    r.rhs = mm.size;
    const MatrixSubspace w = coordinate_space(f, b);
    if (member_count(w, true) <= opts.member_scan_limit) {
      r.lhs = kernels::max_member_rank(w, RankFunction::omega(omega), opts.budget, opts.jobs);
      r.witnesses["method"] = "member-scan";
    } else {
      r.lhs = generic_omega_rank(b, omega);
      r.witnesses["method"] = "generic-member";
    }
    bool ok = r.lhs == r.rhs;
    if (mm.size > 0) {
      // A = sum e_{i_t} (x) e_{j_t}: D_omega(A[I|J]) = omega(pi^{-1}).
      const int n = std::max(b.n(), 1);
      Matrix a(f, n, n);
      std::vector<int> rows;
      std::vector<int> cols;
      for (const Pair& p : mm.matching) {
        a.set_raw(p.i - 1, p.j - 1, 1);
        rows.push_back(p.i);
        cols.push_back(p.j);
      }
      std::vector<int> sorted_cols = cols;
      std::sort(sorted_cols.begin(), sorted_cols.end());
      std::vector<int> pi(cols.size());
      for (std::size_t s = 0; s < cols.size(); ++s)
        pi[s] = static_cast<int>(std::find(cols.begin(), cols.end(), sorted_cols[s]) - cols.begin());
      const IndexSet rs(rows);
      const IndexSet cs(sorted_cols);
      const Elem value = d_omega(submatrix(a, rs, cs), omega);
      const Elem expected = omega.at(inverse_permutation(pi));
      r.witnesses["matching_matrix"] = {{"matrix", matrix_to_json(a)},
                                        {"I", to_json(rs)},
                                        {"J", to_json(cs)},
                                        {"d_omega", f.to_int(value)},
                                        {"omega_pi_inverse", f.to_int(expected)}};
      ok = ok && value == expected && !value.is_zero();
    }
    r.verdict = ok ? Verdict::confirmed : Verdict::refuted;
    r.elapsed = clock.elapsed();
    return r;
  });
}

VerdictReport check_rmba(const GraphSupport& g, const Field& field, const VerifyOptions& opts) {
  const json instance = {{"field", field.name()}, {"support", to_json(g)}};
  return guarded("rmba", instance, [&] {
    Stopwatch clock;
    VerdictReport r = make_report("rmba", instance);
    const MatchingResult mm = nu_general(g);
    r.rhs = 2LL * mm.size;
    const MatrixSubspace u = coordinate_space_alt(field, g);
    if (member_count(u, true) <= opts.member_scan_limit) {
      r.lhs = kernels::max_member_rank(u, RankFunction::plain(), opts.budget, opts.jobs);
      r.witnesses["method"] = "member-scan";
    } else {
      r.lhs = generic_rank_alt(g);
      r.witnesses["method"] = "generic-member";
    }
    bool ok = r.lhs == r.rhs;
    if (mm.size > 0) {
      Matrix a(field, u.n(), u.n());
      for (const Pair& e : mm.matching) a += unit_wedge(field, u.n(), e.i, e.j);
      const int rank = gauss_rank(a);
      r.witnesses["matching_matrix"] = {{"matrix", matrix_to_json(a)}, {"rank", rank}};
      ok = ok && rank == 2 * mm.size;
    }
    r.verdict = ok ? Verdict::confirmed : Verdict::refuted;
    r.elapsed = clock.elapsed();
    return r;
  });
}

VerdictReport check_pfaffian(const Matrix& a) {
  const Field& f = a.field();
  VerdictReport r = make_report("pfaffian", {{"matrix", matrix_to_json(a)}});
  const Elem det = determinant_elim(a);
  const Elem pf = pfaffian(a);
  r.lhs = f.to_int(det);
  r.rhs = f.to_int(f.mul(pf, pf));
  r.witnesses["pfaffian"] = f.to_int(pf);
  r.verdict = r.lhs == r.rhs ? Verdict::confirmed : Verdict::refuted;
  return r;
}

// ---------------------------------------------------------------------------

const char* extremal_kind_name(ExtremalClass::Kind k) {
  switch (k) {
    case ExtremalClass::Kind::row_type: return "row-type";
    case ExtremalClass::Kind::col_type: return "col-type";
    case ExtremalClass::Kind::not_extremal: return "NOT-EXTREMAL";
    case ExtremalClass::Kind::counterexample: return "counterexample";
  }
  return "?";
}

ExtremalClass classify_extremal_perrank(const MatrixSubspace& w, int k, const VerifyOptions& opts) {
  const Field& f = w.field();
  const int n = w.n();
  require(f.characteristic() != 2, ErrorCode::PreconditionViolated, "classification needs char F != 2");
  require(n >= 3, ErrorCode::PreconditionViolated, "classification needs n >= 3");
  require(k >= 1 && k <= n, ErrorCode::PreconditionViolated, "classification needs 1 <= k <= n");
  require(w.flavor() == Flavor::general, ErrorCode::InvalidInput, "classification needs a general subspace");

  ExtremalClass out;
  out.dim = w.dim();
  if (out.dim != k * n) {
    out.reason = "dim W != kn";
    return out;
  }
  const WeightFn one = WeightFn::one(f, std::max(n, 1));
  out.rho_one = kernels::max_member_rank(w, RankFunction::omega(one), opts.budget, opts.jobs);
  if (out.rho_one != k) {
    out.reason = "rho_one(W) != k";
    return out;
  }

  // B(W) must be I x [n] or [n] x I; then W equals the matching span.
  const BipartiteSupport lead = leading_support(w);
  std::vector<int> row_set;
  std::vector<int> col_set;
  for (const Pair& p : lead.pairs()) {
    row_set.push_back(p.i);
    col_set.push_back(p.j);
  }
  std::sort(row_set.begin(), row_set.end());
  row_set.erase(std::unique(row_set.begin(), row_set.end()), row_set.end());
  std::sort(col_set.begin(), col_set.end());
  col_set.erase(std::unique(col_set.begin(), col_set.end()), col_set.end());

  auto product_support = [&](const std::vector<int>& index, bool rows) {
    std::vector<Pair> pairs;
    for (int a : index)
      for (int b = 1; b <= n; ++b) pairs.push_back(rows ? Pair{a, b} : Pair{b, a});
    return BipartiteSupport(n, pairs);
  };

  const bool row_shape = static_cast<int>(row_set.size()) == k && lead == product_support(row_set, true);
  const bool col_shape = static_cast<int>(col_set.size()) == k && lead == product_support(col_set, false);
  if (row_shape) {
    out.index_set = IndexSet(row_set);
    if (coordinate_space(f, product_support(row_set, true)) == w) {
      out.kind = ExtremalClass::Kind::row_type;
      return out;
    }
    out.kind = ExtremalClass::Kind::counterexample;
    out.reason = "B(W) = I x [n] but W != span{e_i : i in I} (x) F^n";
    return out;
  }
  if (col_shape) {
    out.index_set = IndexSet(col_set);
    if (coordinate_space(f, product_support(col_set, false)) == w) {
      out.kind = ExtremalClass::Kind::col_type;
      return out;
    }
    out.kind = ExtremalClass::Kind::counterexample;
    out.reason = "B(W) = [n] x I but W != F^n (x) span{e_i : i in I}";
    return out;
  }
  out.kind = ExtremalClass::Kind::counterexample;
  out.reason = "B(W) is neither I x [n] nor [n] x I";
  return out;
}

MatrixSubspace w_u_space(const Field& field, Elem a, Elem b) {
  require(!(a.is_zero() && b.is_zero()), ErrorCode::PreconditionViolated, "W_u needs u != 0");
  Matrix x(field, 2, 2);
  x.set(0, 0, a);
  x.set(1, 0, field.neg(b));
  Matrix y(field, 2, 2);
  y.set(0, 1, a);
  y.set(1, 1, b);
  const std::vector<Matrix> mats = {x, y};
  return MatrixSubspace::canonicalize(field, 2, Flavor::general, mats);
}

VerdictReport verify_w_u_classification(const Field& field, const VerifyOptions& opts) {
  require(field.characteristic() != 2, ErrorCode::PreconditionViolated, "W_u classification needs char F != 2");
  const json instance = {{"field", field.name()}, {"n", 2}, {"k", 1}};
  return guarded("eqcase", instance, [&] {
    Stopwatch clock;
    VerdictReport r = make_report("eqcase", instance);
    const WeightFn one = WeightFn::one(field, 2);
    const RankFunction perm_rank = RankFunction::omega(one);

    SubspaceEnumerator e(Ambient::of(field, BipartiteSupport::full(2)), 2);
    e.check_budget(opts.budget, "2-dim subspaces of M_2");
    std::vector<MatrixSubspace> extremal;
    for (std::uint64_t idx = 0; idx < e.count(); ++idx) {
      MatrixSubspace w = e.at(idx);
      if (!kernels::find_member_serial(w, true, opts.budget, [&](const Matrix& m) { return perm_rank.exceeds(m, 1); }))
        extremal.push_back(std::move(w));
    }

    std::vector<MatrixSubspace> family;
    auto add_unique = [&](MatrixSubspace w) {
      if (std::find(family.begin(), family.end(), w) == family.end()) family.push_back(std::move(w));
    };
    for (const Elem& a : field.elements())
      for (const Elem& b : field.elements()) {
        // projective representatives: first nonzero coordinate is 1
        if (a.is_zero() ? b.value != 1 : a.value != 1) continue;
        const MatrixSubspace wu = w_u_space(field, a, b);
        add_unique(wu);
        std::vector<Matrix> transposed;
        for (const Matrix& m : wu.basis()) transposed.push_back(m.transposed());
        add_unique(MatrixSubspace::canonicalize(field, 2, Flavor::general, transposed));
      }

    bool ok = extremal.size() == family.size();
    for (const MatrixSubspace& w : extremal)
      if (std::find(family.begin(), family.end(), w) == family.end()) {
        ok = false;
        r.witnesses["counterexample"] = subspace_to_json(w);
        break;
      }
    r.lhs = static_cast<long long>(extremal.size());
    r.rhs = static_cast<long long>(family.size());
    r.witnesses["subspaces"] = e.count();
    r.witnesses["extremal"] = extremal.size();
    r.witnesses["family"] = family.size();
    r.verdict = ok ? Verdict::confirmed : Verdict::refuted;
    r.elapsed = clock.elapsed();
    return r;
  });
}

bool KkpoAssignment::all_zero() const {
  return std::all_of(lambda.begin(), lambda.end(), [](std::uint8_t v) { return v == 0; });
}

std::vector<Matrix> kkpo_basis(const KkpoAssignment& a, const Field& field) {
  const int k = a.k;
  std::vector<Matrix> out;
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k + 1; ++j) {
      Matrix m = Matrix::unit(field, k + 1, i, j);
      for (int l = 1; l <= k + 1; ++l) m.set_raw(k, l - 1, a.at(i, j, l));
      out.push_back(std::move(m));
    }
  return out;
}

json to_json(const KkpoAssignment& a) {
  json lambda = json::array();
  for (int i = 1; i <= a.k; ++i) {
    json rows = json::array();
    for (int j = 1; j <= a.k + 1; ++j) {
      json ls = json::array();
      for (int l = 1; l <= a.k + 1; ++l) ls.push_back(a.at(i, j, l));
      rows.push_back(ls);
    }
    lambda.push_back(rows);
  }
  return {{"k", a.k}, {"lambda", lambda}};
}

KkpoAssignment kkpo_from_json(const json& j, const Field& field) {
  try {
    KkpoAssignment a(j.at("k").get<int>());
    require(a.k >= 1 && a.k + 1 <= kMaxMatrixDim, ErrorCode::InvalidInput, "k out of range");
    const json& lambda = j.at("lambda");
    require(lambda.size() == static_cast<std::size_t>(a.k), ErrorCode::InvalidInput, "lambda needs k rows");
    for (int i = 1; i <= a.k; ++i) {
      require(lambda[i - 1].size() == static_cast<std::size_t>(a.k + 1), ErrorCode::InvalidInput,
              "lambda[i] needs k+1 entries");
      for (int jj = 1; jj <= a.k + 1; ++jj) {
        require(lambda[i - 1][jj - 1].size() == static_cast<std::size_t>(a.k + 1), ErrorCode::InvalidInput,
                "lambda[i][j] needs k+1 entries");
        for (int l = 1; l <= a.k + 1; ++l) a.at(i, jj, l) = field.canonical(lambda[i - 1][jj - 1][l - 1].get<int>()).value;
      }
    }
    return a;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed lambda assignment: ") + e.what());
  }
}

KkpoAssignment random_kkpo_assignment(Rng& rng, const Field& field, int k) {
  KkpoAssignment a(k);
  for (auto& v : a.lambda) v = static_cast<std::uint8_t>(rng.uniform(0, field.order() - 1));
  return a;
}

VerdictReport check_kkpo_contrapositive(const KkpoAssignment& a, const Field& field, const VerifyOptions& opts) {
  const int k = a.k;
  require(k >= 2, ErrorCode::PreconditionViolated, "needs k >= 2");
  require(field.order() >= 3, ErrorCode::PreconditionViolated, "needs |F| >= 3");
  json instance = to_json(a);
  instance["field"] = field.name();
  return guarded("kkpo", instance, [&] {
    Stopwatch clock;
    VerdictReport r = make_report("kkpo", instance);
    const int size = k + 1;
    const WeightFn one = WeightFn::one(field, size);
    const std::vector<Matrix> basis = kkpo_basis(a, field);
    auto basis_of = [&](int i, int j) -> const Matrix& { return basis[(i - 1) * (k + 1) + (j - 1)]; };
    const MatrixSubspace u = MatrixSubspace::canonicalize(field, size, Flavor::general, basis);
    r.witnesses["char_hypothesis_met"] = field.characteristic() != 2;

    if (a.all_zero()) {
      r.rhs = k;
      r.lhs = kernels::max_member_rank(u, RankFunction::omega(one), opts.budget, opts.jobs);
      r.verdict = r.lhs == k ? Verdict::confirmed : Verdict::refuted;
      r.elapsed = clock.elapsed();
      return r;
    }

    r.rhs = k + 1;
    auto record = [&](const char* source, const Matrix& m, json candidate) {
      r.lhs = k + 1;
      r.witnesses["source"] = source;
      r.witnesses["member"] = matrix_to_json(m);
      r.witnesses["permanent"] = field.to_int(permanent_ryser(m));
      r.witnesses["candidate"] = std::move(candidate);
      r.verdict = Verdict::confirmed;
    };
    auto complement = [](int upto, std::initializer_list<int> drop) {
      std::vector<int> out;
      for (int x = 1; x <= upto; ++x)
        if (std::find(drop.begin(), drop.end(), x) == drop.end()) out.push_back(x);
      return out;
    };

    // C_theta = theta A_ij + sum_t A_{i_t j_t} for a nonzero off-diagonal lambda_ijl.
    for (int i = 1; i <= k; ++i)
      for (int j = 1; j <= k + 1; ++j)
        for (int l = 1; l <= k + 1; ++l) {
          if (j == l || a.at(i, j, l) == 0) continue;
          const auto is = complement(k, {i});
          const auto js = complement(k + 1, {j, l});
          Matrix rest(field, size, size);
          for (std::size_t t = 0; t < is.size(); ++t) rest += basis_of(is[t], js[t]);
          for (const Elem& theta : field.elements()) {
            const Matrix c = basis_of(i, j).scaled(theta) + rest;
            if (!d_omega(c, one).is_zero()) {
              record("c_theta", c, {{"i", i}, {"j", j}, {"l", l}, {"theta", field.to_int(theta)}});
              r.elapsed = clock.elapsed();
              return r;
            }
          }
        }

    // C = A_ij' + A_ij'' + sum_t A_{i_t j_t}.
    for (int i = 1; i <= k; ++i)
      for (int j1 = 1; j1 <= k + 1; ++j1)
        for (int j2 = j1 + 1; j2 <= k + 1; ++j2) {
          const auto is = complement(k, {i});
          const auto js = complement(k + 1, {j1, j2});
          Matrix c = basis_of(i, j1) + basis_of(i, j2);
          for (std::size_t t = 0; t < is.size(); ++t) c += basis_of(is[t], js[t]);
          if (!d_omega(c, one).is_zero()) {
            record("c_ij", c, {{"i", i}, {"j1", j1}, {"j2", j2}});
            r.elapsed = clock.elapsed();
            return r;
          }
        }

    const auto hit = kernels::find_member(
        u, true, opts.budget, [&](const Matrix& m) { return !d_omega(m, one).is_zero(); }, opts.jobs);
    if (hit) {
      record("scan", kernels::member_at(u, true, *hit), {{"member_index", *hit}});
    } else {
      r.lhs = k;
      r.verdict = Verdict::refuted;
      r.witnesses["source"] = "none";
      r.witnesses["counterexample"] = subspace_to_json(u);
    }
    r.elapsed = clock.elapsed();
    return r;
  });
}

MatrixSubspace fm_witness(const std::vector<Vector>& u_basis, int n, bool transpose) {
  require(!u_basis.empty(), ErrorCode::InvalidInput, "fm_witness needs at least one vector");
  const Field& f = Field::get(u_basis.front().front().field);
  std::vector<Matrix> mats;
  for (const Vector& u : u_basis) {
    require(static_cast<int>(u.size()) == n, ErrorCode::InvalidInput, "vectors must have length n");
    for (int j = 1; j <= n; ++j) {
      const Vector e = unit_vector(f, n, j);
      mats.push_back(transpose ? outer(e, u) : outer(u, e));
    }
  }
  return MatrixSubspace::canonicalize(f, n, Flavor::general, mats);
}

}  // namespace boundrank
