#pragma once

#include <json.hpp>

#include "torsolab/canon.hpp"
#include "torsolab/decomposition.hpp"
#include "torsolab/pds.hpp"
#include "torsolab/treelike.hpp"

namespace torsolab {

using Json = nlohmann::json;

/// Parses JSON text; syntax errors become ParseError with line and column.
Json parse_json(std::string_view text);

/// {"n": <count>, "edges": [[u, v], ...]}
Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

/// {"graph_ref": <graph6>, "nodes": [{"id", "bag", "parent"}]}
Json to_json(const TreeDecomposition& t, const Graph& g);
TreeDecomposition tree_decomposition_from_json(const Json& j);

/// {"graph_ref", "nodes": [{"id", "bag", "part", "boundary", "role"}],
///  "arcs": [[p, c]], "roots": [...]}
Json to_json(const TreelikeDecomposition& d, const Graph& g);
TreelikeDecomposition treelike_from_json(const Json& j);

Json to_json(const VerificationReport& report);
Json to_json(const PdsSolution& s, int target);
Json to_json(const CanonicalForm& form);
CanonicalForm canonical_form_from_json(const Json& j);

}  // namespace torsolab
