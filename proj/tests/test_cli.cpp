#include "boundrank/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "boundrank/json_io.hpp"
#include "test_util.hpp"

using namespace boundrank;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;

  std::vector<json> lines() const {
    std::vector<json> v;
    std::istringstream in(out);
    for (std::string line; std::getline(in, line);) v.push_back(json::parse(line));
    return v;
  }
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kFull3 = R"({"n":3,"pairs":[[1,1],[1,2],[1,3],[2,1],[2,2],[2,3],[3,1],[3,2],[3,3]]})";

}  // namespace

TEST_CASE("eval") {
  Run r = cli({"eval", "--matrix", R"({"field":"gf3","entries":[[1,0,0],[0,1,0],[0,0,1]]})", "--omega", "one"});
  CHECK(r.code == 0);
  json j = r.lines().at(0);
  CHECK(j["d_omega"] == 1);
  CHECK(j["omega_rank"] == 3);

  r = cli({"eval", "--matrix", R"({"field":"gf3","entries":[[1,1],[2,1]]})", "--omega", "one"});
  CHECK(r.lines().at(0)["omega_rank"] == 1);
  CHECK(r.lines().at(0)["rank"] == 2);

  r = cli({"eval", "--matrix", R"({"field":"gf5","entries":[[0,0],[0,0]]})"});
  j = r.lines().at(0);
  CHECK(j["omega_rank"] == 0);
  CHECK(j["rank"] == 0);
  CHECK(j["pfaffian"] == 0);

  r = cli({"eval", "--matrix", R"({"field":"gf3","entries":[[0,1],[2,0]]})"});
  CHECK(r.lines().at(0)["pfaffian"] == 1);
}

TEST_CASE("matching and maxedges") {
  CHECK(cli({"matching", "--support", R"({"n":3,"pairs":[[1,1],[2,2],[3,3]]})"}).lines().at(0)["nu"] == 3);
  CHECK(cli({"matching", "--support", R"({"n":3,"edges":[[1,2],[2,3],[1,3]]})"}).lines().at(0)["nu"] == 1);
  CHECK(cli({"matching", "--support", R"({"n":5,"edges":[[1,2],[2,3],[3,4],[4,5],[1,5]]})"}).lines().at(0)["nu"] == 2);
  CHECK(cli({"maxedges", "--support", kFull3, "--k", "1"}).lines().at(0)["max_edges"] == 3);
  CHECK(cli({"maxedges", "--support", R"({"n":3,"edges":[[1,2],[2,3],[1,3]]})", "--k", "1"}).lines().at(0)["max_edges"] ==
        3);
  CHECK(cli({"maxedges", "--support", R"({"n":2,"pairs":[]})", "--k", "1"}).lines().at(0)["max_edges"] == 0);
}

TEST_CASE("maxdim") {
  const Run r = cli({"maxdim", "--support", R"({"n":2,"pairs":[[1,1],[1,2],[2,1],[2,2]]})", "--k", "1", "--omega", "one"});
  CHECK(r.code == 0);
  CHECK(r.lines().at(0)["max_dim"] == 2);
  CHECK(r.lines().at(0)["max_edges"] == 2);
  const Run g = cli({"maxdim", "--support", R"({"n":4,"edges":[[1,2],[3,4]]})", "--k", "1"});
  CHECK(g.lines().at(0)["max_dim"] == 1);
}

TEST_CASE("verify batches") {
  Run r = cli({"verify", "anyw", "--all-supports-n2", "--field", "gf2", "--omega", "one"});
  CHECK(r.code == 0);
  auto lines = r.lines();
  CHECK(lines.size() == 48);
  for (const json& j : lines) CHECK(j["verdict"] == "confirmed");

  r = cli({"verify", "pfaffian", "--n", "4", "--field", "gf2", "--exhaustive"});
  CHECK(r.code == 0);
  CHECK(r.lines().size() == 64);

  r = cli({"verify", "eqcase", "--field", "gf3"});
  CHECK(r.code == 0);
  CHECK(r.lines().at(0)["verdict"] == "confirmed");

  r = cli({"verify", "kkpo", "--field", "gf3", "--random", "30", "--seed", "4"});
  CHECK(r.code == 0);
  CHECK(r.lines().size() == 30);
}

TEST_CASE("exit codes") {
  // refuted: characteristic 2 kkpo instance outside the hypothesis
  const std::string lambda = R"({"k":2,"lambda":[[[1,0,0],[0,1,0],[0,0,1]],[[0,0,0],[0,0,0],[0,0,0]]]})";
  CHECK(cli({"verify", "kkpo", "--field", "gf4", "--lambda", lambda}).code == 2);
  CHECK(cli({"verify", "anyw", "--support", kFull3, "--k", "1", "--budget", "5"}).code == 3);
  CHECK(cli({"eval", "--matrix", "[1"}).code == 4);
  CHECK(cli({"eval", "--matrix", R"({"field":"gf9","entries":[[1]]})"}).code == 4);
  CHECK(cli({"verify", "nonsense"}).code == 4);
  CHECK(cli({"verify", "anyw", "--field", "gf2"}).code == 4);
  CHECK(cli({"bogus"}).code == 4);
  CHECK(cli({"gen", "bipartite", "--n", "3", "--budget", "0"}).code == 4);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("gen is reproducible") {
  const Run a = cli({"gen", "bipartite", "--n", "3", "--seed", "1"});
  const Run b = cli({"gen", "bipartite", "--n", "3", "--seed", "1"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != cli({"gen", "bipartite", "--n", "3", "--seed", "2"}).out);

  const Run s = cli({"gen", "subspace", "--n", "3", "--dim", "2", "--field", "gf3", "--seed", "9"});
  const MatrixSubspace w = subspace_from_json(s.lines().at(0));
  CHECK(w.dim() == 2);
  CHECK(leading_support(w).size() == 2);
  CHECK(cli({"gen", "lambda", "--field", "gf3", "--seed", "3"}).lines().at(0)["k"] == 2);
}

TEST_CASE("witness and reduce") {
  const std::string sub =
      R"({"field":"gf2","n":2,"flavor":"general","basis":[[[1,0],[0,1]],[[0,0],[0,1]]]})";
  Run r = cli({"witness", "nullstellensatz", "--subspace", sub});
  CHECK(r.code == 0);
  CHECK(r.lines().at(0)["witness"]["found"] == true);
  // the canonical basis is {E11, E22}; only their sum has a nonzero 2 x 2 determinant
  CHECK(r.lines().at(0)["witness"]["lambda"] == json::array({1, 1}));

  r = cli({"witness", "fm", "--vectors", "[[1,0,0]]", "--n", "3", "--field", "gf3"});
  const MatrixSubspace w = subspace_from_json(r.lines().at(0));
  CHECK(w.dim() == 3);
  r = cli({"witness", "extremal", "--subspace", subspace_to_json(w).dump(), "--k", "1"});
  CHECK(r.code == 0);
  CHECK(r.lines().at(0)["witnesses"]["kind"] == "row-type");

  r = cli({"reduce", "--support", R"({"n":1,"pairs":[[1,1]]})"});
  CHECK(r.lines().at(0)["graph"]["edges"] == json::parse("[[1,2]]"));
  r = cli({"reduce", "--support", R"({"n":2,"pairs":[[1,1],[2,2]]})", "--k", "1", "--field", "gf2"});
  CHECK(r.code == 0);
  CHECK(r.lines().at(0)["verdict"] == "confirmed");
}

TEST_CASE("batch output does not depend on the worker count") {
  const std::vector<std::string> base = {"verify", "anyw", "--random", "12", "--n", "3", "--max-edges", "6",
                                         "--field", "gf2", "--omega", "one", "--seed", "5"};
  auto with_jobs = [&](const char* jobs) {
    auto args = base;
    args.push_back("--jobs");
    args.push_back(jobs);
    return cli(args);
  };
  const Run one = with_jobs("1");
  const Run four = with_jobs("4");
  CHECK(one.code == 0);
  CHECK(one.out == four.out);
  CHECK(one.out == with_jobs("3").out);
}

TEST_CASE("output file") {
  const std::string path = (std::filesystem::temp_directory_path() / "boundrank_cli_test.jsonl").string();
  CHECK(cli({"gen", "graph", "--n", "4", "--seed", "1", "-o", path}).code == 0);
  std::ifstream in(path);
  json j;
  in >> j;
  CHECK(j["n"] == 4);
}
