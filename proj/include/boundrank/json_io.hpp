#pragma once

#include <json.hpp>

#include "boundrank/subspace.hpp"

namespace boundrank {

using json = nlohmann::json;

// {"field": "gf3", "rows": n, "cols": m, "entries": [[...], ...]}
json matrix_to_json(const Matrix& a);
/// `field` overrides / supplies the field when the object has none.
Matrix matrix_from_json(const json& j, const Field* field = nullptr);

// {"n": n, "pairs": [[i, j], ...]} and {"n": n, "edges": [[i, j], ...]}
json to_json(const BipartiteSupport& b);
json to_json(const GraphSupport& g);
json pairs_to_json(const std::vector<Pair>& pairs);
BipartiteSupport bipartite_from_json(const json& j);
GraphSupport graph_from_json(const json& j);
bool is_graph_json(const json& j);

json to_json(const IndexSet& s);

// {"field", "n", "flavor": "general"|"alternating", "ambient": support?, "basis": [entries, ...]}
json subspace_to_json(const MatrixSubspace& w);
/// Canonicalizes on load; with an "ambient" support every basis matrix
/// must lie in the corresponding coordinate space.
MatrixSubspace subspace_from_json(const json& j);

/// A string spec ("sgn" | "one" | "random:<seed>"), a table object
/// {"degree": m, "values": [...]}, or an array of table objects covering
/// degrees 1..m.
WeightFn weight_from_json(const Field& field, const json& j);

/// Parses text as JSON, or reads it from a file when it names one.
json parse_json_argument(const std::string& text);

}  // namespace boundrank
