#include "boundrank/json_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace boundrank {

namespace {

const Field& field_of(const json& j, const Field* fallback) {
  if (j.is_object() && j.contains("field")) return Field::parse(j.at("field").get<std::string>());
  if (fallback) return *fallback;
  throw Error(ErrorCode::InvalidInput, "missing \"field\"");
}

std::vector<Pair> pairs_from(const json& arr) {
  std::vector<Pair> out;
  for (const json& p : arr) {
    if (!p.is_array() || p.size() != 2) throw Error(ErrorCode::InvalidInput, "pairs must be [i, j] arrays");
    out.push_back({p[0].get<int>(), p[1].get<int>()});
  }
  return out;
}

Matrix entries_to_matrix(const json& entries, const Field& field) {
  return Matrix::from_ints(field, entries.get<std::vector<std::vector<int>>>());
}

}  // namespace

json matrix_to_json(const Matrix& a) {
  return {{"field", a.field().name()}, {"rows", a.rows()}, {"cols", a.cols()}, {"entries", a.to_ints()}};
}

Matrix matrix_from_json(const json& j, const Field* field) {
  try {
    const Field& f = field_of(j, field);
    const json& entries = j.is_array() ? j : j.at("entries");
    Matrix m = entries_to_matrix(entries, f);
    if (j.is_object()) {
      if (j.contains("rows") && j.at("rows").get<int>() != m.rows())
        throw Error(ErrorCode::InvalidInput, "\"rows\" does not match entries");
      if (j.contains("cols") && j.at("cols").get<int>() != m.cols())
        throw Error(ErrorCode::InvalidInput, "\"cols\" does not match entries");
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed matrix: ") + e.what());
  }
}

json pairs_to_json(const std::vector<Pair>& pairs) {
  json arr = json::array();
  for (const Pair& p : pairs) arr.push_back({p.i, p.j});
  return arr;
}

json to_json(const BipartiteSupport& b) { return {{"n", b.n()}, {"pairs", pairs_to_json(b.pairs())}}; }

json to_json(const GraphSupport& g) { return {{"n", g.n()}, {"edges", pairs_to_json(g.edges())}}; }

bool is_graph_json(const json& j) { return j.is_object() && j.contains("edges"); }

BipartiteSupport bipartite_from_json(const json& j) {
  try {
    return BipartiteSupport(j.at("n").get<int>(), pairs_from(j.at("pairs")));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed bipartite support: ") + e.what());
  }
}

GraphSupport graph_from_json(const json& j) {
  try {
    return GraphSupport(j.at("n").get<int>(), pairs_from(j.at("edges")));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed graph support: ") + e.what());
  }
}

json to_json(const IndexSet& s) { return s.elems(); }

json subspace_to_json(const MatrixSubspace& w) {
  json basis = json::array();
  for (const Matrix& m : w.basis()) basis.push_back(m.to_ints());
  return {{"field", w.field().name()},
          {"n", w.n()},
          {"flavor", w.flavor() == Flavor::general ? "general" : "alternating"},
          {"dim", w.dim()},
          {"basis", basis}};
}

MatrixSubspace subspace_from_json(const json& j) {
  try {
    const Field& f = field_of(j, nullptr);
    const int n = j.at("n").get<int>();
    const std::string flavor_name = j.value("flavor", std::string("general"));
    if (flavor_name != "general" && flavor_name != "alternating")
      throw Error(ErrorCode::InvalidInput, "flavor must be \"general\" or \"alternating\"");
    const Flavor flavor = flavor_name == "general" ? Flavor::general : Flavor::alternating;
    std::vector<Matrix> mats;
    for (const json& entries : j.at("basis")) mats.push_back(matrix_from_json(entries, &f));
    MatrixSubspace w = MatrixSubspace::canonicalize(f, n, flavor, mats);
    if (j.contains("ambient")) {
      const MatrixSubspace ambient = flavor == Flavor::general
                                         ? coordinate_space(f, bipartite_from_json(j.at("ambient")))
                                         : coordinate_space_alt(f, graph_from_json(j.at("ambient")));
      if (ambient.n() != n || !ambient.contains(w))
        throw Error(ErrorCode::InvalidInput, "basis matrices leave the ambient support");
    }
    return w;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed subspace: ") + e.what());
  }
}

WeightFn weight_from_json(const Field& field, const json& j) {
  try {
    if (j.is_string()) return WeightFn::parse(field, j.get<std::string>());
    std::vector<json> tables;
    if (j.is_object()) tables.push_back(j);
    else if (j.is_array()) tables.assign(j.begin(), j.end());
    else throw Error(ErrorCode::InvalidInput, "weight function must be a string or table");
    std::sort(tables.begin(), tables.end(),
              [](const json& a, const json& b) { return a.at("degree").get<int>() < b.at("degree").get<int>(); });
    std::vector<std::vector<int>> values;
    for (const json& t : tables) {
      if (t.at("degree").get<int>() != static_cast<int>(values.size()) + 1)
        throw Error(ErrorCode::InvalidInput, "weight tables must cover degrees 1..m without gaps");
      values.push_back(t.at("values").get<std::vector<int>>());
    }
    return WeightFn::from_tables(field, values);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed weight table: ") + e.what());
  }
}

json parse_json_argument(const std::string& text) {
  std::string body = text;
  std::error_code ec;
  if (!text.empty() && text.front() != '{' && text.front() != '[' && std::filesystem::is_regular_file(text, ec)) {
    std::ifstream in(text);
    std::ostringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace boundrank
