#include "boundrank/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>

#include "boundrank/combinatorics.hpp"
#include "boundrank/theorems.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace boundrank {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRefuted = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInput = 4;

std::uint64_t default_budget() {
  const char* env = std::getenv("BOUNDRANK_BUDGET");
  if (env == nullptr || *env == '\0') return kDefaultBudget;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  require(end != nullptr && *end == '\0' && v > 0, ErrorCode::InvalidInput,
          "BOUNDRANK_BUDGET must be a positive integer");
  return v;
}

struct RunConfig {
  std::string field = "gf2";
  std::vector<std::string> omegas;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  int jobs = 1;
  std::string output;
  bool timing = false;

  // instance sources
  std::string matrix;
  std::string support;
  std::string subspace;
  std::string lambda;
  std::string vectors;
  int all_supports = -1;
  bool all_supports_n2 = false;
  int all_graphs = -1;
  int random = -1;
  bool exhaustive = false;

  // shape
  int n = 3;
  int dim = 2;
  int max_edges = -1;
  std::vector<int> ks;
  bool transpose = false;
  int count = 1;

  bool full_scan = false;
  bool explore = false;
  std::uint64_t member_scan_limit = 1u << 16;

  std::string statement;
  std::string kind;

  const Field& field_ref() const { return Field::parse(field); }
  VerifyOptions options() const {
    VerifyOptions o;
    o.budget = budget;
    o.jobs = jobs;
    o.full_scan = full_scan;
    o.explore_optimal = explore;
    o.member_scan_limit = member_scan_limit;
    return o;
  }
};

WeightFn parse_omega(const Field& field, const std::string& text) {
  if (text.empty()) throw Error(ErrorCode::InvalidInput, "empty omega spec");
  if (text.front() == '{' || text.front() == '[' || text.find(".json") != std::string::npos)
    return weight_from_json(field, parse_json_argument(text));
  return WeightFn::parse(field, text);
}

std::vector<WeightFn> omegas_of(const RunConfig& cfg, const Field& field) {
  std::vector<WeightFn> out;
  if (cfg.omegas.empty()) {
    out.push_back(WeightFn::sgn(field));
  } else {
    for (const auto& s : cfg.omegas) out.push_back(parse_omega(field, s));
  }
  return out;
}

void emit(std::ostream& out, const json& j) { out << j.dump() << '\n' << std::flush; }

// ---------------------------------------------------------------------------
// Batches: instances are built up front, run in chunks, and printed in index order.

using Task = std::function<VerdictReport(const VerifyOptions&)>;

int exit_code_for(const std::vector<Verdict>& verdicts) {
  bool budget = false;
  for (Verdict v : verdicts) {
    if (v == Verdict::refuted) return kExitRefuted;
    if (v == Verdict::budget_exceeded) budget = true;
  }
  return budget ? kExitBudget : kExitOk;
}

int run_batch(const std::vector<Task>& tasks, const RunConfig& cfg, std::ostream& out) {
  const VerifyOptions opts = cfg.options();
  std::vector<Verdict> verdicts;
  verdicts.reserve(tasks.size());
  if (tasks.size() <= 1 || cfg.jobs <= 1) {
    for (const Task& t : tasks) {
      const VerdictReport r = t(opts);
      verdicts.push_back(r.verdict);
      emit(out, r.to_json(cfg.timing));
    }
    return exit_code_for(verdicts);
  }

  VerifyOptions inner = opts;
  inner.jobs = 1;
  const std::size_t chunk = static_cast<std::size_t>(cfg.jobs) * 16;
  for (std::size_t begin = 0; begin < tasks.size(); begin += chunk) {
    const std::size_t end = std::min(tasks.size(), begin + chunk);
    std::vector<std::optional<VerdictReport>> reports(end - begin);
    std::exception_ptr error;
    std::mutex mu;
#ifdef _OPENMP
    omp_set_num_threads(cfg.jobs);
#endif
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t idx = static_cast<std::int64_t>(begin); idx < static_cast<std::int64_t>(end); ++idx) {
      try {
        reports[idx - begin] = tasks[idx](inner);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    for (const auto& r : reports) {
      verdicts.push_back(r->verdict);
      emit(out, r->to_json(cfg.timing));
    }
  }
  return exit_code_for(verdicts);
}

// Sources of supports for the batch statements.

std::vector<BipartiteSupport> all_bipartite(int n) {
  require(n >= 0 && n * n <= 16, ErrorCode::InvalidInput, "--all-supports needs n <= 4");
  std::vector<BipartiteSupport> out;
  const int cells = n * n;
  for (std::uint32_t mask = 0; mask < (1u << cells); ++mask) {
    std::vector<Pair> pairs;
    for (int c = 0; c < cells; ++c)
      if (mask >> c & 1u) pairs.push_back({c / n + 1, c % n + 1});
    out.emplace_back(n, std::move(pairs));
  }
  return out;
}

std::vector<GraphSupport> all_graphs(int n) {
  require(n >= 0 && n * (n - 1) / 2 <= 21, ErrorCode::InvalidInput, "--all-graphs needs n <= 7");
  const GraphSupport kn = GraphSupport::complete(n);
  const int m = kn.size();
  std::vector<GraphSupport> out;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<Pair> edges;
    for (int c = 0; c < m; ++c)
      if (mask >> c & 1u) edges.push_back(kn.edges()[c]);
    out.emplace_back(n, std::move(edges));
  }
  return out;
}

constexpr int kMaxRejections = 100000;

BipartiteSupport draw_bipartite(Rng rng, int n, int max_edges) {
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    BipartiteSupport b = random_bipartite(rng, n);
    if (max_edges < 0 || b.size() <= max_edges) return b;
  }
  throw Error(ErrorCode::InvalidInput, "could not draw a support within --max-edges");
}

GraphSupport draw_graph(Rng rng, int n, int max_edges) {
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    GraphSupport g = random_graph(rng, n);
    if (max_edges < 0 || g.size() <= max_edges) return g;
  }
  throw Error(ErrorCode::InvalidInput, "could not draw a graph within --max-edges");
}

std::vector<BipartiteSupport> bipartite_source(const RunConfig& cfg) {
  if (!cfg.support.empty()) return {bipartite_from_json(parse_json_argument(cfg.support))};
  if (cfg.all_supports_n2) return all_bipartite(2);
  if (cfg.all_supports >= 0) return all_bipartite(cfg.all_supports);
  if (cfg.random >= 0) {
    require(cfg.n >= 1 && cfg.n <= kMaxMatrixDim, ErrorCode::InvalidInput, "--n out of range");
    const Rng root(cfg.seed);
    std::vector<BipartiteSupport> out;
    for (int i = 0; i < cfg.random; ++i) out.push_back(draw_bipartite(root.split("instance", i), cfg.n, cfg.max_edges));
    return out;
  }
  throw Error(ErrorCode::InvalidInput, "give --support, --all-supports, --all-supports-n2 or --random");
}

std::vector<GraphSupport> graph_source(const RunConfig& cfg) {
  if (!cfg.support.empty()) return {graph_from_json(parse_json_argument(cfg.support))};
  if (cfg.all_graphs >= 0) return all_graphs(cfg.all_graphs);
  if (cfg.random >= 0) {
    require(cfg.n >= 1 && cfg.n <= kMaxMatrixDim, ErrorCode::InvalidInput, "--n out of range");
    const Rng root(cfg.seed);
    std::vector<GraphSupport> out;
    for (int i = 0; i < cfg.random; ++i) out.push_back(draw_graph(root.split("instance", i), cfg.n, cfg.max_edges));
    return out;
  }
  throw Error(ErrorCode::InvalidInput, "give --support, --all-graphs or --random");
}

std::vector<int> ks_or(const RunConfig& cfg, int upto) {
  if (!cfg.ks.empty()) return cfg.ks;
  std::vector<int> out;
  for (int k = 0; k <= upto; ++k) out.push_back(k);
  return out;
}

// Random subspaces: n uniform in [1, --n], dim uniform in [1, --dim].
std::vector<MatrixSubspace> subspace_source(const RunConfig& cfg, const Field& field, Flavor flavor) {
  if (!cfg.subspace.empty()) {
    MatrixSubspace w = subspace_from_json(parse_json_argument(cfg.subspace));
    require(w.flavor() == flavor, ErrorCode::InvalidInput, "subspace has the wrong flavor for this statement");
    return {std::move(w)};
  }
  require(cfg.random >= 0, ErrorCode::InvalidInput, "give --subspace or --random");
  require(cfg.n >= 1 && cfg.n <= kMaxMatrixDim && cfg.dim >= 1, ErrorCode::InvalidInput, "--n / --dim out of range");
  const Rng root(cfg.seed);
  std::vector<MatrixSubspace> out;
  for (int i = 0; i < cfg.random; ++i) {
    Rng rng = root.split("instance", i);
    const int n = rng.uniform(flavor == Flavor::alternating ? 2 : 1, std::max(cfg.n, 2));
    const int d = rng.uniform(1, cfg.dim);
    out.push_back(flavor == Flavor::general ? random_subspace(rng, field, n, d)
                                            : random_alternating_subspace(rng, field, n, d));
  }
  return out;
}

// kkpo batches: index 0 is all-zero, then every single-nonzero assignment, then dense draws.
std::vector<KkpoAssignment> kkpo_source(const RunConfig& cfg, const Field& field) {
  if (!cfg.lambda.empty()) return {kkpo_from_json(parse_json_argument(cfg.lambda), field)};
  require(cfg.random >= 0, ErrorCode::InvalidInput, "give --lambda or --random");
  const int k = cfg.ks.empty() ? 2 : cfg.ks.front();
  require(k >= 1 && k + 1 <= kMaxMatrixDim, ErrorCode::InvalidInput, "--k out of range");
  std::vector<KkpoAssignment> out;
  const auto total = static_cast<std::size_t>(cfg.random);
  if (out.size() < total) out.emplace_back(k);
  const std::size_t slots = KkpoAssignment(k).lambda.size();
  for (std::size_t s = 0; s < slots && out.size() < total; ++s)
    for (int v = 1; v < field.order() && out.size() < total; ++v) {
      KkpoAssignment a(k);
      a.lambda[s] = static_cast<std::uint8_t>(v);
      out.push_back(std::move(a));
    }
  const Rng root(cfg.seed);
  for (std::size_t i = out.size(); i < total; ++i) {
    Rng rng = root.split("instance", i);
    out.push_back(random_kkpo_assignment(rng, field, k));
  }
  return out;
}

std::vector<Matrix> pfaffian_source(const RunConfig& cfg, const Field& field) {
  if (!cfg.matrix.empty()) return {matrix_from_json(parse_json_argument(cfg.matrix), &field)};
  const int n = cfg.n;
  require(n >= 0 && n <= kMaxMatrixDim, ErrorCode::InvalidInput, "--n out of range");
  std::vector<Matrix> out;
  if (cfg.exhaustive) {
    const GraphSupport kn = GraphSupport::complete(n);
    const std::uint64_t total = checked_pow(static_cast<std::uint64_t>(field.order()), kn.size());
    if (total > cfg.budget) throw BudgetExceeded(total, cfg.budget, "exhaustive alternating matrices");
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      Matrix a(field, n, n);
      std::uint64_t rest = idx;
      for (int e = kn.size() - 1; e >= 0; --e) {
        const auto v = static_cast<std::uint8_t>(rest % field.order());
        rest /= field.order();
        const Pair p = kn.edges()[e];
        a.set_raw(p.i - 1, p.j - 1, v);
        a.set_raw(p.j - 1, p.i - 1, field.raw_neg(v));
      }
      out.push_back(std::move(a));
    }
    return out;
  }
  require(cfg.random >= 0, ErrorCode::InvalidInput, "give --matrix, --exhaustive or --random");
  const Rng root(cfg.seed);
  for (int i = 0; i < cfg.random; ++i) {
    Rng rng = root.split("instance", i);
    out.push_back(random_alternating(rng, field, n));
  }
  return out;
}

VerdictReport extremal_report(const MatrixSubspace& w, int k, const VerifyOptions& opts) {
  const json instance = {{"subspace", subspace_to_json(w)}, {"k", k}};
  return guarded("eqcase", instance, [&] {
    const ExtremalClass c = classify_extremal_perrank(w, k, opts);
    VerdictReport r;
    r.statement = "eqcase";
    r.instance = instance;
    r.lhs = c.dim;
    r.rhs = static_cast<long long>(k) * w.n();
    r.witnesses = {{"kind", extremal_kind_name(c.kind)}, {"rho_one", c.rho_one}, {"reason", c.reason}};
    if (c.kind == ExtremalClass::Kind::row_type || c.kind == ExtremalClass::Kind::col_type)
      r.witnesses["index_set"] = to_json(c.index_set);
    r.verdict = c.kind == ExtremalClass::Kind::counterexample ? Verdict::refuted : Verdict::confirmed;
    return r;
  });
}

std::vector<Task> verify_tasks(const RunConfig& cfg) {
  const Field& field = cfg.field_ref();
  const std::string& st = cfg.statement;
  std::vector<Task> tasks;

  if (st == "anyw" || st == "rwmb") {
    const auto omegas = omegas_of(cfg, field);
    for (const BipartiteSupport& b : bipartite_source(cfg))
      for (const WeightFn& w : omegas) {
        if (st == "rwmb") {
          tasks.push_back([b, w](const VerifyOptions& o) { return check_rwmb(b, w, o); });
          continue;
        }
        for (int k : ks_or(cfg, b.n()))
          tasks.push_back([b, w, k](const VerifyOptions& o) { return verify_anyw(b, k, w, o); });
      }
  } else if (st == "anygr" || st == "rmba") {
    for (const GraphSupport& g : graph_source(cfg)) {
      if (st == "rmba") {
        tasks.push_back([g, &field](const VerifyOptions& o) { return check_rmba(g, field, o); });
        continue;
      }
      for (int k : ks_or(cfg, g.n() / 2))
        tasks.push_back([g, k, &field](const VerifyOptions& o) { return verify_anygr(g, k, field, o); });
    }
  } else if (st == "reduction") {
    for (const BipartiteSupport& b : bipartite_source(cfg))
      for (int k : ks_or(cfg, b.n()))
        tasks.push_back([b, k, &field](const VerifyOptions& o) { return verify_reduction_equalities(b, k, field, o); });
  } else if (st == "mainp") {
    const auto omegas = omegas_of(cfg, field);
    for (const MatrixSubspace& w : subspace_source(cfg, field, Flavor::general))
      for (const WeightFn& om : omegas)
        tasks.push_back([w, om](const VerifyOptions& o) { return check_mainp(w, om, o); });
  } else if (st == "alter") {
    for (const MatrixSubspace& u : subspace_source(cfg, field, Flavor::alternating))
      tasks.push_back([u](const VerifyOptions& o) { return check_alter(u, o); });
  } else if (st == "pfaffian") {
    for (const Matrix& a : pfaffian_source(cfg, field))
      tasks.push_back([a](const VerifyOptions&) { return check_pfaffian(a); });
  } else if (st == "eqcase") {
    if (cfg.subspace.empty()) {
      tasks.push_back([&field](const VerifyOptions& o) { return verify_w_u_classification(field, o); });
    } else {
      require(cfg.ks.size() == 1, ErrorCode::InvalidInput, "eqcase with --subspace needs one --k");
      const MatrixSubspace w = subspace_from_json(parse_json_argument(cfg.subspace));
      const int k = cfg.ks.front();
      tasks.push_back([w, k](const VerifyOptions& o) { return extremal_report(w, k, o); });
    }
  } else if (st == "kkpo") {
    for (const KkpoAssignment& a : kkpo_source(cfg, field))
      tasks.push_back([a, &field](const VerifyOptions& o) { return check_kkpo_contrapositive(a, field, o); });
  } else {
    throw Error(ErrorCode::InvalidInput, "unknown statement: " + st);
  }
  return tasks;
}

// ---------------------------------------------------------------------------

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  const json input = parse_json_argument(cfg.matrix);
  const Field* override_field = input.contains("field") ? nullptr : &cfg.field_ref();
  const Matrix a = matrix_from_json(input, override_field);
  const Field& f = a.field();
  const WeightFn omega = cfg.omegas.empty() ? WeightFn::sgn(f) : parse_omega(f, cfg.omegas.front());
  json j = {{"field", f.name()},
            {"omega", omega.spec()},
            {"omega_rank", omega_rank(a, omega)},
            {"rank", gauss_rank(a)}};
  if (a.rows() == a.cols()) j["d_omega"] = f.to_int(d_omega(a, omega));
  if (a.rows() == a.cols() && is_alternating(a)) {
    j["alternating"] = true;
    if (a.rows() % 2 == 0) j["pfaffian"] = f.to_int(pfaffian(a));
  }
  emit(out, j);
  return kExitOk;
}

int cmd_matching(const RunConfig& cfg, std::ostream& out) {
  const json input = parse_json_argument(cfg.support);
  if (is_graph_json(input)) {
    const GraphSupport g = graph_from_json(input);
    const MatchingResult m = nu_general(g);
    emit(out, {{"kind", "graph"}, {"nu", m.size}, {"matching", pairs_to_json(m.matching)}});
  } else {
    const BipartiteSupport b = bipartite_from_json(input);
    const MatchingResult m = nu_bipartite(b);
    emit(out, {{"kind", "bipartite"}, {"nu", m.size}, {"matching", pairs_to_json(m.matching)}});
  }
  return kExitOk;
}

int single_k(const RunConfig& cfg) {
  require(cfg.ks.size() == 1, ErrorCode::InvalidInput, "give exactly one --k");
  return cfg.ks.front();
}

int cmd_maxedges(const RunConfig& cfg, std::ostream& out) {
  const json input = parse_json_argument(cfg.support);
  const int k = single_k(cfg);
  if (is_graph_json(input)) {
    const GraphMaxEdges r = max_edges_bounded_nu_general(graph_from_json(input), k);
    emit(out, {{"kind", "graph"}, {"k", k}, {"max_edges", r.size}, {"witness", to_json(r.witness)}});
  } else {
    const BipartiteMaxEdges r = max_edges_bounded_nu_bipartite(bipartite_from_json(input), k);
    emit(out, {{"kind", "bipartite"}, {"k", k}, {"max_edges", r.size}, {"witness", to_json(r.witness)}});
  }
  return kExitOk;
}

int cmd_maxdim(const RunConfig& cfg, std::ostream& out) {
  const json input = parse_json_argument(cfg.support);
  const Field& f = cfg.field_ref();
  const int k = single_k(cfg);
  const VerifyOptions opts = cfg.options();
  json j = {{"field", f.name()}, {"k", k}};
  MaxDimResult r;
  if (is_graph_json(input)) {
    const GraphSupport g = graph_from_json(input);
    r = max_feasible_dim(Ambient::of(f, g), RankFunction::plain(), 2 * k, opts);
    j["kind"] = "graph";
    j["max_edges"] = max_edges_bounded_nu_general(g, k).size;
  } else {
    const BipartiteSupport b = bipartite_from_json(input);
    const WeightFn omega = cfg.omegas.empty() ? WeightFn::sgn(f) : parse_omega(f, cfg.omegas.front());
    r = max_feasible_dim(Ambient::of(f, b), RankFunction::omega(omega), k, opts);
    j["kind"] = "bipartite";
    j["omega"] = omega.spec();
    j["max_edges"] = max_edges_bounded_nu_bipartite(b, k).size;
  }
  j["max_dim"] = r.dim;
  j["subspaces_examined"] = r.subspaces_examined;
  if (r.witness) j["witness"] = subspace_to_json(*r.witness);
  emit(out, j);
  return kExitOk;
}

int cmd_witness(const RunConfig& cfg, std::ostream& out) {
  if (cfg.kind == "fm") {
    const json input = parse_json_argument(cfg.vectors);
    require(input.is_array() && !input.empty(), ErrorCode::InvalidInput, "--vectors must be a non-empty array");
    const Field& f = cfg.field_ref();
    std::vector<Vector> us;
    for (const json& row : input) {
      require(row.is_array(), ErrorCode::InvalidInput, "each vector must be an array");
      Vector u;
      for (const json& x : row) u.push_back(f.from_int(x.get<int>()));
      us.push_back(std::move(u));
    }
    const MatrixSubspace w = fm_witness(us, cfg.n, cfg.transpose);
    emit(out, subspace_to_json(w));
    return kExitOk;
  }
  const MatrixSubspace w = subspace_from_json(parse_json_argument(cfg.subspace));
  if (cfg.kind == "extremal") {
    const VerdictReport r = extremal_report(w, single_k(cfg), cfg.options());
    emit(out, r.to_json(cfg.timing));
    return exit_code_for({r.verdict});
  }
  require(cfg.kind == "nullstellensatz", ErrorCode::InvalidInput, "witness kind: nullstellensatz | extremal | fm");
  require(w.flavor() == Flavor::general, ErrorCode::InvalidInput, "nullstellensatz witness needs a general subspace");
  const WeightFn omega = cfg.omegas.empty() ? WeightFn::sgn(w.field()) : parse_omega(w.field(), cfg.omegas.front());
  const MatchingResult mm = nu_bipartite(leading_support(w));
  json j = {{"omega", omega.spec()}, {"nu_b", mm.size}};
  if (mm.size > 0) {
    const auto piv = w.pivot_positions();
    std::vector<Matrix> chosen;
    for (const Pair& p : mm.matching)
      chosen.push_back(w.basis_matrix(static_cast<int>(std::find(piv.begin(), piv.end(), p) - piv.begin())));
    j["witness"] = to_json(nullstellensatz_witness(chosen, omega));
  }
  emit(out, j);
  return kExitOk;
}

int cmd_reduce(const RunConfig& cfg, std::ostream& out) {
  const BipartiteSupport b = bipartite_from_json(parse_json_argument(cfg.support));
  if (cfg.ks.empty()) {
    emit(out, {{"graph", to_json(reduce_bipartite_to_graph(b))}});
    return kExitOk;
  }
  std::vector<Task> tasks;
  for (int k : cfg.ks) {
    const Field& f = cfg.field_ref();
    tasks.push_back([b, k, &f](const VerifyOptions& o) { return verify_reduction_equalities(b, k, f, o); });
  }
  return run_batch(tasks, cfg, out);
}

int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  const Field& f = cfg.field_ref();
  require(cfg.n >= 1 && cfg.n <= kMaxMatrixDim, ErrorCode::InvalidInput, "--n out of range");
  require(cfg.count >= 1, ErrorCode::InvalidInput, "--count must be positive");
  const Rng root(cfg.seed);
  for (int i = 0; i < cfg.count; ++i) {
    Rng rng = root.split(cfg.kind, i);
    if (cfg.kind == "bipartite") {
      emit(out, to_json(draw_bipartite(rng, cfg.n, cfg.max_edges)));
    } else if (cfg.kind == "graph") {
      emit(out, to_json(draw_graph(rng, cfg.n, cfg.max_edges)));
    } else if (cfg.kind == "subspace" || cfg.kind == "alternating-subspace") {
      const bool alt = cfg.kind != "subspace";
      const int cap = coordinate_count(cfg.n, alt ? Flavor::alternating : Flavor::general);
      require(cfg.dim >= 0 && cfg.dim <= cap, ErrorCode::InvalidInput, "--dim exceeds the ambient dimension");
      // redraw until the span has the requested dimension
      for (int attempt = 0;; ++attempt) {
        require(attempt < kMaxRejections, ErrorCode::InvalidInput, "could not draw a subspace of that dimension");
        Rng sub = rng.split("attempt", static_cast<std::uint64_t>(attempt));
        MatrixSubspace w = alt ? random_alternating_subspace(sub, f, cfg.n, cfg.dim)
                               : random_subspace(sub, f, cfg.n, cfg.dim);
        if (w.dim() == cfg.dim) {
          emit(out, subspace_to_json(w));
          break;
        }
      }
    } else if (cfg.kind == "matrix") {
      emit(out, matrix_to_json(random_matrix(rng, f, cfg.n)));
    } else if (cfg.kind == "alternating") {
      emit(out, matrix_to_json(random_alternating(rng, f, cfg.n)));
    } else if (cfg.kind == "lambda") {
      const int k = cfg.ks.empty() ? 2 : cfg.ks.front();
      require(k >= 1 && k + 1 <= kMaxMatrixDim, ErrorCode::InvalidInput, "--k out of range");
      json j = to_json(random_kkpo_assignment(rng, f, k));
      j["field"] = f.name();
      emit(out, j);
    } else {
      throw Error(ErrorCode::InvalidInput,
                  "gen kind: bipartite | graph | subspace | alternating-subspace | matrix | alternating | lambda");
    }
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact ranks of bounded-rank matrix spaces over small finite fields"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "boundrank 0.1.0");

  auto common = [&](CLI::App* c) {
    c->add_option("--field", cfg.field, "gf2 | gf3 | gf4 | gf5 | gf7 | gf11 | gf13");
    c->add_option("--seed", cfg.seed, "root seed for all random draws");
    c->add_option("--budget", cfg.budget, "enumeration budget (default: BOUNDRANK_BUDGET or 1e7)")
        ->check(CLI::PositiveNumber);
    c->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
    c->add_option("-o,--output", cfg.output, "write JSON-lines here instead of stdout");
    c->add_flag("--timing", cfg.timing, "include elapsed_ms in reports");
  };

  auto* eval = app.add_subcommand("eval", "D_omega, omega-rank, rank and Pfaffian of one matrix");
  common(eval);
  eval->add_option("--matrix", cfg.matrix, "matrix JSON (inline or file)")->required();
  eval->add_option("--omega", cfg.omegas, "sgn | one | random:<seed> | table JSON");

  auto* matching = app.add_subcommand("matching", "maximum matching of a support");
  common(matching);
  matching->add_option("--support", cfg.support, "support JSON (pairs or edges)")->required();

  auto* maxedges = app.add_subcommand("maxedges", "max edges with matching number <= k");
  common(maxedges);
  maxedges->add_option("--support", cfg.support, "support JSON")->required();
  maxedges->add_option("--k", cfg.ks)->required();

  auto* maxdim = app.add_subcommand("maxdim", "max dimension of a subspace with rank <= k (2k for graphs)");
  common(maxdim);
  maxdim->add_option("--support", cfg.support, "support JSON")->required();
  maxdim->add_option("--k", cfg.ks)->required();
  maxdim->add_option("--omega", cfg.omegas);

  auto* verify = app.add_subcommand("verify", "run a verifier over one instance or a batch");
  common(verify);
  verify->add_option("statement", cfg.statement,
                     "anyw | anygr | mainp | alter | reduction | pfaffian | eqcase | kkpo | rwmb | rmba")
      ->required();
  verify->add_option("--omega", cfg.omegas, "repeatable");
  verify->add_option("--k", cfg.ks, "repeatable; default all k");
  verify->add_option("--support", cfg.support);
  verify->add_option("--subspace", cfg.subspace);
  verify->add_option("--matrix", cfg.matrix);
  verify->add_option("--lambda", cfg.lambda);
  verify->add_flag("--all-supports-n2", cfg.all_supports_n2, "every B in [2]^2");
  verify->add_option("--all-supports", cfg.all_supports, "every B in [n]^2");
  verify->add_option("--all-graphs", cfg.all_graphs, "every graph on [n]");
  verify->add_option("--random", cfg.random, "number of seeded instances");
  verify->add_flag("--exhaustive", cfg.exhaustive, "pfaffian: every alternating matrix of order --n");
  verify->add_option("--n", cfg.n);
  verify->add_option("--dim", cfg.dim);
  verify->add_option("--max-edges", cfg.max_edges, "reject random supports above this size");
  verify->add_flag("--full-scan", cfg.full_scan, "certify by member scans only");
  verify->add_flag("--explore", cfg.explore, "anyw: count optimal and coordinate optimal subspaces");
  verify->add_option("--member-scan-limit", cfg.member_scan_limit);

  auto* witness = app.add_subcommand("witness", "extract a witness");
  common(witness);
  witness->add_option("kind", cfg.kind, "nullstellensatz | extremal | fm")->required();
  witness->add_option("--subspace", cfg.subspace);
  witness->add_option("--omega", cfg.omegas);
  witness->add_option("--k", cfg.ks);
  witness->add_option("--vectors", cfg.vectors, "fm: JSON array of vectors");
  witness->add_option("--n", cfg.n);
  witness->add_flag("--transpose", cfg.transpose);

  auto* reduce = app.add_subcommand("reduce", "bipartite support to graph; with --k check the equalities");
  common(reduce);
  reduce->add_option("--support", cfg.support)->required();
  reduce->add_option("--k", cfg.ks);

  auto* gen = app.add_subcommand("gen", "seeded random instance");
  common(gen);
  gen->add_option("kind", cfg.kind, "bipartite | graph | subspace | alternating-subspace | matrix | alternating | lambda")
      ->required();
  gen->add_option("--n", cfg.n);
  gen->add_option("--dim", cfg.dim);
  gen->add_option("--k", cfg.ks);
  gen->add_option("--max-edges", cfg.max_edges);
  gen->add_option("--count", cfg.count);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (cfg.budget == 0) cfg.budget = default_budget();
    Field::parse(cfg.field);

    std::ofstream file;
    if (!cfg.output.empty()) {
      file.open(cfg.output);
      require(file.good(), ErrorCode::InvalidInput, "cannot open output file " + cfg.output);
    }
    std::ostream& sink = cfg.output.empty() ? out : file;

    if (eval->parsed()) return cmd_eval(cfg, sink);
    if (matching->parsed()) return cmd_matching(cfg, sink);
    if (maxedges->parsed()) return cmd_maxedges(cfg, sink);
    if (maxdim->parsed()) return cmd_maxdim(cfg, sink);
    if (witness->parsed()) return cmd_witness(cfg, sink);
    if (reduce->parsed()) return cmd_reduce(cfg, sink);
    if (gen->parsed()) return cmd_gen(cfg, sink);
    return run_batch(verify_tasks(cfg), cfg, sink);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const json::exception& e) {
    err << "error: malformed JSON: " << e.what() << '\n';
    return kExitInput;
  }
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace boundrank
