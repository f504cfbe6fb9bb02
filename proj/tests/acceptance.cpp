// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "boundrank/cli.hpp"
#include "boundrank/combinatorics.hpp"
#include "boundrank/theorems.hpp"
#include "oracles.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace boundrank;

namespace {

// Every comparison below is exact equality of integers or field elements.
constexpr long long kTolerance = 0;

bool same(long long a, long long b) { return (a > b ? a - b : b - a) <= kTolerance; }

int worker_count() {
#ifdef _OPENMP
  return std::max(1, omp_get_num_procs());
#else
  return 1;
#endif
}

struct Batch {
  int code = 0;
  std::string raw;
  std::vector<json> lines;
};

Batch run(std::vector<std::string> args, bool with_jobs = true) {
  if (with_jobs) {
    args.push_back("--jobs");
    args.push_back(std::to_string(worker_count()));
  }
  std::ostringstream out;
  std::ostringstream err;
  Batch b;
  b.code = run_cli(args, out, err);
  b.raw = out.str();
  std::istringstream in(b.raw);
  for (std::string line; std::getline(in, line);) b.lines.push_back(json::parse(line));
  if (!err.str().empty()) std::fprintf(stderr, "%s", err.str().c_str());
  return b;
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
  void expect(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

// All reports confirmed with lhs == rhs, and exactly `expected` of them.
void expect_equalities(Outcome& o, const Batch& b, std::size_t expected, const std::string& label) {
  o.expect(b.code == 0, label + ": exit code " + std::to_string(b.code));
  o.expect(b.lines.size() == expected,
           label + ": " + std::to_string(b.lines.size()) + " reports, expected " + std::to_string(expected));
  for (const json& j : b.lines) {
    if (j["verdict"] != "confirmed" || !same(j["lhs"].get<long long>(), j["rhs"].get<long long>())) {
      o.fail(label + ": " + j.dump());
      return;
    }
  }
}

std::vector<json> g_feasible;  // (n, k, lhs) from criteria 1-2, for criterion 6

void record_feasible(const Batch& b) {
  for (const json& j : b.lines)
    if (j["statement"] == "anyw") g_feasible.push_back(j);
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  int reports = 0;
  for (const char* field : {"gf2", "gf3"}) {
    std::vector<Batch> per_omega;
    for (const char* omega : {"sgn", "one", "random:7"}) {
      Batch b = run({"verify", "anyw", "--all-supports-n2", "--field", field, "--omega", omega});
      expect_equalities(o, b, 48, std::string(field) + "/" + omega);
      for (const json& j : b.lines) {
        const BipartiteSupport sup = bipartite_from_json(j["instance"]["support"]);
        o.expect(j["rhs"] == oracle::max_edges_bipartite(sup, j["instance"]["k"].get<int>()),
                 "rhs disagrees with the subset oracle: " + j.dump());
      }
      reports += static_cast<int>(b.lines.size());
      record_feasible(b);
      per_omega.push_back(std::move(b));
    }
    // the optimum does not depend on omega
    for (std::size_t t = 0; t < per_omega.front().lines.size(); ++t)
      for (const Batch& b : per_omega)
        o.expect(b.lines.size() == per_omega.front().lines.size() &&
                     b.lines[t]["lhs"] == per_omega.front().lines[t]["lhs"],
                 "lhs differs across omega");
  }
  o.detail = o.pass ? std::to_string(reports) + " reports, lhs == rhs, omega-independent" : o.detail;
  return o;
}

Outcome criterion2() {
  Outcome o;
  std::uint64_t subspaces = 0;
  int reports = 0;
  for (const char* omega : {"sgn", "one"}) {
    Batch b = run({"verify", "anyw", "--random", "50", "--n", "3", "--max-edges", "7", "--k", "1", "--k", "2",
                   "--field", "gf2", "--omega", omega, "--seed", "2024", "--full-scan"});
    expect_equalities(o, b, 100, std::string("gf2/") + omega);
    for (const json& j : b.lines) {
      o.expect(j["instance"]["support"]["pairs"].size() <= 7, "support larger than 7");
      const json& up = j["witnesses"]["upper"];
      subspaces += up["subspaces"].get<std::uint64_t>();
      // full enumeration: every (rhs+1)-dim subspace was examined by a raw member scan
      const int size = static_cast<int>(j["instance"]["support"]["pairs"].size());
      const int d = up["dim"].get<int>();
      if (d <= size)
        o.expect(up["subspaces"] == oracle::gaussian_binomial(size, d, 2) && up["scan_certificates"] == up["subspaces"],
                 "incomplete upper-bound enumeration: " + j.dump());
    }
    reports += static_cast<int>(b.lines.size());
    record_feasible(b);
  }
  if (o.pass) o.detail = std::to_string(reports) + " reports, " + std::to_string(subspaces) + " subspaces enumerated";
  return o;
}

Outcome criterion3() {
  Outcome o;
  Batch all = run({"verify", "anygr", "--all-graphs", "4", "--field", "gf2", "--k", "0", "--k", "1", "--k", "2"});
  expect_equalities(o, all, 192, "all graphs on [4]");
  Batch rnd = run({"verify", "anygr", "--random", "20", "--n", "5", "--max-edges", "7", "--field", "gf2", "--k", "0",
                   "--k", "1", "--k", "2", "--seed", "2024"});
  expect_equalities(o, rnd, 60, "seeded graphs on [5]");
  for (const Batch* b : {&all, &rnd})
    for (const json& j : b->lines) {
      const GraphSupport g = graph_from_json(j["instance"]["support"]);
      o.expect(g.size() <= 7 || b == &all, "graph larger than 7 edges");
      o.expect(j["rhs"] == oracle::max_edges_graph(g, j["instance"]["k"].get<int>()),
               "rhs disagrees with the subset oracle: " + j.dump());
    }
  if (o.pass) o.detail = "192 + 60 reports, lhs == rhs";
  return o;
}

// Random basis with prescribed lex-leading positions forming a k-matching.
std::vector<Matrix> matched_basis(Rng& rng, const Field& f, int n, int k) {
  std::vector<int> rows(n);
  std::vector<int> cols(n);
  std::iota(rows.begin(), rows.end(), 1);
  std::iota(cols.begin(), cols.end(), 1);
  std::shuffle(rows.begin(), rows.end(), rng.engine());
  std::shuffle(cols.begin(), cols.end(), rng.engine());
  std::vector<Matrix> out;
  for (int t = 0; t < k; ++t) {
    Matrix a(f, n, n);
    const int lead = (rows[t] - 1) * n + (cols[t] - 1);
    a.set_raw(rows[t] - 1, cols[t] - 1, static_cast<std::uint8_t>(rng.uniform(1, f.order() - 1)));
    for (int c = lead + 1; c < n * n; ++c) a.set_raw(c / n, c % n, static_cast<std::uint8_t>(rng.uniform(0, f.order() - 1)));
    out.push_back(std::move(a));
  }
  return out;
}

Outcome criterion4() {
  Outcome o;
  int reports = 0;
  int witnesses = 0;
  for (const char* field : {"gf2", "gf3", "gf4"}) {
    Batch b = run({"verify", "mainp", "--random", "1000", "--n", "5", "--dim", "4", "--field", field, "--omega", "sgn",
                   "--omega", "one", "--omega", "random:1", "--omega", "random:2", "--seed", "2024"});
    o.expect(b.code == 0, std::string(field) + ": exit code " + std::to_string(b.code));
    o.expect(b.lines.size() == 4000, std::string(field) + ": expected 4000 reports");
    for (const json& j : b.lines) {
      o.expect(j["verdict"] == "confirmed" && j["lhs"].get<int>() >= j["rhs"].get<int>(), "mainp: " + j.dump());
      const int nu = j["rhs"].get<int>();
      if (nu > 0) {
        const json& w = j["witnesses"]["nullstellensatz"];
        o.expect(w["found"] == true, "witness search failed: " + j.dump());
        o.expect(w["top_coefficient"] == w["omega_pi_inverse"], "coefficient mismatch: " + j.dump());
        ++witnesses;
      }
    }
    reports += static_cast<int>(b.lines.size());
  }

  // 200 seeded instances with non-echelon bases and permuted leading positions
  const Rng root(4);
  int coefficient_checks = 0;
  for (int i = 0; i < 200; ++i) {
    Rng rng = root.split("coefficient", static_cast<std::uint64_t>(i));
    const Field& f = Field::get(std::vector<FieldKind>{FieldKind::gf2, FieldKind::gf3, FieldKind::gf4,
                                                       FieldKind::gf5, FieldKind::gf7}[i % 5]);
    const int n = rng.uniform(1, 5);
    const int k = rng.uniform(1, n);
    const WeightFn omega = WeightFn::random(f, rng.engine()());
    const auto basis = matched_basis(rng, f, n, k);
    const NullstellensatzWitness w = nullstellensatz_witness(basis, omega);
    o.expect(w.top_coefficient == omega.at(inverse_permutation(w.pi)), "coefficient extraction failed on instance " +
                                                                           std::to_string(i));
    o.expect(w.found, "witness not found on instance " + std::to_string(i));
    if (w.found) {
      Matrix sum(f, n, n);
      for (int t = 0; t < k; ++t)
        if (w.lambda[t]) sum += basis[t].scaled(f.inv(basis[t](lex_leading_position(basis[t]).i - 1,
                                                               lex_leading_position(basis[t]).j - 1)));
      o.expect(!oracle::d_omega(submatrix(sum, w.rows, w.cols), omega).is_zero(), "witness value is zero");
    }
    ++coefficient_checks;
  }
  if (o.pass)
    o.detail = std::to_string(reports) + " subspace reports, " + std::to_string(witnesses) + " witnesses, " +
               std::to_string(coefficient_checks) + " coefficient extractions";
  return o;
}

Outcome criterion5() {
  Outcome o;
  long long reports = 0;
  for (const char* field : {"gf2", "gf3"}) {
    for (int n = 1; n <= 4; ++n)
      for (const char* omega : {"sgn", "one", "random:7"}) {
        if (n == 4 && std::string(omega) == "random:7") continue;
        Batch b = run({"verify", "rwmb", "--all-supports", std::to_string(n), "--field", field, "--omega", omega});
        expect_equalities(o, b, std::size_t{1} << (n * n), std::string("rwmb ") + field + " n=" + std::to_string(n));
        reports += static_cast<long long>(b.lines.size());
      }
    for (int n = 2; n <= 5; ++n) {
      Batch b = run({"verify", "rmba", "--all-graphs", std::to_string(n), "--field", field});
      expect_equalities(o, b, std::size_t{1} << (n * (n - 1) / 2), std::string("rmba ") + field + " n=" + std::to_string(n));
      for (const json& j : b.lines)
        o.expect(j["rhs"] == 2 * oracle::matching_graph(graph_from_json(j["instance"]["support"])), "nu oracle");
      reports += static_cast<long long>(b.lines.size());
    }
  }
  if (o.pass) o.detail = std::to_string(reports) + " supports and graphs, rank == matching bound";
  return o;
}

Outcome criterion6() {
  Outcome o;
  for (int n = 1; n <= 5; ++n)
    for (int k = 1; k <= n; ++k) {
      const Batch b = run({"maxedges", "--support", to_json(BipartiteSupport::full(n)).dump(), "--k", std::to_string(k)},
                          false);
      o.expect(b.code == 0 && b.lines.size() == 1 && b.lines[0]["max_edges"] == k * n,
               "max edges for n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
  o.expect(!g_feasible.empty(), "no feasible subspaces recorded from criteria 1-2");
  for (const json& j : g_feasible) {
    const int n = j["instance"]["support"]["n"].get<int>();
    const int k = j["instance"]["k"].get<int>();
    o.expect(j["lhs"].get<int>() <= k * n && j["witnesses"]["lower"]["dim"].get<int>() <= k * n,
             "dimension above kn: " + j.dump());
  }
  if (o.pass) o.detail = "15 (n, k) pairs, " + std::to_string(g_feasible.size()) + " feasible optima within kn";
  return o;
}

Outcome criterion7() {
  Outcome o;
  int matrices = 0;
  auto check = [&](const Batch& b, std::size_t expected, const std::string& label) {
    o.expect(b.code == 0 && b.lines.size() == expected, label + ": wrong report count or exit code");
    for (const json& j : b.lines) {
      o.expect(j["verdict"] == "confirmed", label + ": det != pf^2");
      const Matrix a = matrix_from_json(j["instance"]["matrix"]);
      o.expect(a.field().to_int(oracle::pfaffian(a)) == j["witnesses"]["pfaffian"], label + ": recursive oracle differs");
      ++matrices;
    }
  };
  check(run({"verify", "pfaffian", "--n", "4", "--field", "gf2", "--exhaustive"}), 64, "gf2 n=4");
  check(run({"verify", "pfaffian", "--n", "6", "--field", "gf3", "--random", "1000", "--seed", "2024"}), 1000, "gf3 n=6");
  check(run({"verify", "pfaffian", "--n", "6", "--field", "gf5", "--random", "1000", "--seed", "2024"}), 1000, "gf5 n=6");
  if (o.pass) o.detail = std::to_string(matrices) + " matrices, det == pf^2 and expansion == recursion";
  return o;
}

Outcome criterion8() {
  Outcome o;
  for (const auto& [field, total] : {std::pair{"gf3", 130}, std::pair{"gf5", 806}}) {
    const Batch b = run({"verify", "eqcase", "--field", field});
    o.expect(b.code == 0 && b.lines.size() == 1, std::string(field) + ": no report");
    if (b.lines.empty()) continue;
    const json& j = b.lines[0];
    o.expect(j["verdict"] == "confirmed", std::string(field) + ": classification refuted");
    o.expect(j["witnesses"]["subspaces"] == total, std::string(field) + ": wrong subspace count");
    const int q = Field::parse(field).order();
    // q + 1 projective u, each giving W_u and its transpose
    o.expect(j["witnesses"]["extremal"] == 2 * (q + 1), std::string(field) + ": unexpected family size");
  }
  if (o.pass) o.detail = "130 + 806 subspaces, extremal set == {W_u, W_u^t}";
  return o;
}

Outcome criterion9() {
  Outcome o;
  int structured = 0;
  int scanned = 0;
  int single_class = 0;
  for (const char* field : {"gf3", "gf4"}) {
    const Batch b = run({"verify", "kkpo", "--random", "10000", "--k", "2", "--field", field, "--seed", "2024"});
    o.expect(b.code == 0 && b.lines.size() == 10000, std::string(field) + ": wrong report count or exit code");
    const int q = Field::parse(field).order();
    const std::size_t singles = 2 * 3 * 3 * static_cast<std::size_t>(q - 1);
    for (std::size_t t = 0; t < b.lines.size(); ++t) {
      const json& j = b.lines[t];
      o.expect(j["verdict"] == "confirmed", std::string(field) + ": " + j.dump());
      if (t == 0) {
        o.expect(j["lhs"] == 2 && j["rhs"] == 2, "all-zero assignment must have rho_one = 2");
        continue;
      }
      const std::string source = j["witnesses"].value("source", "");
      if (source == "scan") ++scanned;
      else ++structured;
      if (t <= singles) {
        o.expect(source == "c_theta" || source == "c_ij", "structured candidate missed a single-nonzero assignment");
        ++single_class;
      }
    }
  }
  if (o.pass)
    o.detail = "20000 assignments, " + std::to_string(single_class) + " single-nonzero by structured candidates, " +
               std::to_string(structured) + " structured / " + std::to_string(scanned) + " scanned";
  return o;
}

Outcome criterion10() {
  Outcome o;
  const Batch b = run({"verify", "reduction", "--all-supports-n2", "--field", "gf2", "--k", "0", "--k", "1", "--k", "2"});
  o.expect(b.code == 0 && b.lines.size() == 48, "reduction: wrong report count or exit code");
  for (const json& j : b.lines) {
    o.expect(j["verdict"] == "confirmed", "reduction: " + j.dump());
    const json& w = j["witnesses"];
    o.expect(w["max_dim_bipartite"] == w["max_dim_alternating"] && w["max_edges_bipartite"] == w["max_edges_graph"],
             "reduction: " + j.dump());
  }
  const Rng root(10);
  for (int i = 0; i < 200; ++i) {
    Rng rng = root.split("nu", static_cast<std::uint64_t>(i));
    const BipartiteSupport sup = random_bipartite(rng, rng.uniform(1, 5));
    const GraphSupport g = reduce_bipartite_to_graph(sup);
    const int nb = nu_bipartite(sup).size;
    o.expect(nb == nu_general(g).size && nb == oracle::matching_graph(g), "nu(G) != nu_b(B) on seeded support " +
                                                                             to_json(sup).dump());
  }
  if (o.pass) o.detail = "48 reports, both equalities; nu(G) == nu_b(B) on 200 seeded supports";
  return o;
}

Outcome criterion11() {
  Outcome o;
  const std::vector<std::vector<std::string>> batches = {
      {"verify", "anyw", "--random", "20", "--n", "3", "--max-edges", "7", "--field", "gf2", "--omega", "one", "--seed", "11"},
      {"verify", "mainp", "--random", "100", "--n", "4", "--dim", "3", "--field", "gf3", "--omega", "random:3", "--seed", "11"},
      {"verify", "kkpo", "--random", "300", "--field", "gf3", "--seed", "11"},
      {"verify", "pfaffian", "--random", "100", "--n", "6", "--field", "gf5", "--seed", "11"},
      {"verify", "anygr", "--random", "10", "--n", "5", "--max-edges", "7", "--field", "gf2", "--seed", "11"},
  };
  for (const auto& args : batches) {
    std::string reference;
    for (const char* jobs : {"1", "2", "4", "1"}) {
      auto a = args;
      a.push_back("--jobs");
      a.push_back(jobs);
      const Batch b = run(a, false);
      if (reference.empty()) reference = b.raw;
      o.expect(!b.raw.empty() && b.raw == reference, args[1] + ": output differs with --jobs " + jobs);
    }
  }
  if (o.pass) o.detail = "5 batches byte-identical for --jobs 1, 2, 4 and on rerun";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"anyw equality, all supports of [2]^2", criterion1},
      {"anyw equality, 50 seeded supports of [3]^2", criterion2},
      {"anygr equality, graphs on [4] and [5]", criterion3},
      {"mainp inequality, witnesses and coefficients", criterion4},
      {"coordinate-space ranks equal matching bounds", criterion5},
      {"Koenig value kn and the kn dimension bound", criterion6},
      {"det == pf^2 and Pfaffian oracle", criterion7},
      {"W_u classification over GF(3), GF(5)", criterion8},
      {"kkpo contrapositive, 10^4 assignments per field", criterion9},
      {"bipartite-to-graph reduction", criterion10},
      {"determinism across worker counts", criterion11},
  };
  int failed = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[c].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("criterion %2zu: %s  %s (%s) [%.1fs]\n", c + 1, o.pass ? "PASS" : "FAIL", criteria[c].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
