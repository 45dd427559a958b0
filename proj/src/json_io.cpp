#include "torsolab/json_io.hpp"

#include <algorithm>

#include "torsolab/graph_io.hpp"

namespace torsolab {

namespace {

// Reads a member, turning absence and type mismatches into InputError.
template <typename T>
T field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw InputError(std::string("missing field \"") + name + "\"");
  }
  try {
    return j.at(name).get<T>();
  } catch (const Json::exception&) {
    throw InputError(std::string("field \"") + name + "\" has the wrong type");
  }
}

VertexSet set_field(const Json& j, const char* name) {
  return VertexSet(field<std::vector<Vertex>>(j, name));
}

Json set_json(const VertexSet& s) { return Json(s.members()); }

std::string graph_ref(const Graph& g) {
  std::string text = emit_graph(g, GraphFormat::kGraph6);
  if (!text.empty() && text.back() == '\n') text.pop_back();
  return text;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  throw InputError("certificate is not lowercase hex");
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t at = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto before = text.substr(0, at);
    const int line = 1 + static_cast<int>(std::count(before.begin(), before.end(), '\n'));
    const auto last = before.rfind('\n');
    const int offset = static_cast<int>(last == std::string_view::npos ? at : at - last - 1);
    throw ParseError("invalid JSON", line, offset);
  }
}

Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return {{"n", g.order()}, {"edges", edges}};
}

Graph graph_from_json(const Json& j) {
  const int n = field<int>(j, "n");
  if (n < 0) throw InputError("vertex count must be non-negative");
  std::vector<Edge> edges;
  for (const auto& pair : field<std::vector<std::vector<Vertex>>>(j, "edges")) {
    if (pair.size() != 2) throw InputError("edges must be pairs");
    edges.emplace_back(pair[0], pair[1]);
  }
  return Graph(n, edges);
}

Json to_json(const TreeDecomposition& t, const Graph& g) {
  Json nodes = Json::array();
  for (std::size_t i = 0; i < t.size(); ++i) {
    nodes.push_back({{"id", i}, {"bag", set_json(t.bags[i])}, {"parent", t.parent[i]}});
  }
  return {{"graph_ref", graph_ref(g)}, {"nodes", nodes}};
}

TreeDecomposition tree_decomposition_from_json(const Json& j) {
  const auto nodes = field<std::vector<Json>>(j, "nodes");
  TreeDecomposition t;
  t.bags.resize(nodes.size());
  t.parent.resize(nodes.size());
  std::vector<char> seen(nodes.size(), 0);
  for (const Json& node : nodes) {
    const int id = field<int>(node, "id");
    if (id < 0 || id >= static_cast<int>(nodes.size()) || seen[id]) {
      throw InputError("node ids must be 0..count-1, each once");
    }
    seen[id] = 1;
    t.bags[id] = set_field(node, "bag");
    t.parent[id] = field<int>(node, "parent");
  }
  return t;
}

Json to_json(const TreelikeDecomposition& d, const Graph& g) {
  Json nodes = Json::array();
  for (std::size_t i = 0; i < d.size(); ++i) {
    const TreelikeNode& x = d.nodes[i];
    nodes.push_back({{"id", i},
                     {"bag", set_json(x.bag)},
                     {"part", set_json(x.part)},
                     {"boundary", set_json(x.boundary)},
                     {"role", std::string(to_string(x.role))}});
  }
  Json arcs = Json::array();
  for (const auto& [p, c] : d.arcs) arcs.push_back({p, c});
  return {{"graph_ref", graph_ref(g)}, {"nodes", nodes}, {"arcs", arcs}, {"roots", d.roots}};
}

TreelikeDecomposition treelike_from_json(const Json& j) {
  const auto nodes = field<std::vector<Json>>(j, "nodes");
  TreelikeDecomposition d;
  d.nodes.resize(nodes.size());
  std::vector<char> seen(nodes.size(), 0);
  for (const Json& node : nodes) {
    const int id = field<int>(node, "id");
    if (id < 0 || id >= static_cast<int>(nodes.size()) || seen[id]) {
      throw InputError("node ids must be 0..count-1, each once");
    }
    seen[id] = 1;
    TreelikeNode& x = d.nodes[id];
    x.bag = set_field(node, "bag");
    x.part = set_field(node, "part");
    x.boundary = set_field(node, "boundary");
    const auto role = field<std::string>(node, "role");
    if (role == "leaf") {
      x.role = NodeRole::kLeaf;
    } else if (role == "split") {
      x.role = NodeRole::kSplit;
    } else if (role == "join") {
      x.role = NodeRole::kJoin;
    } else {
      throw InputError("unknown role \"" + role + "\"");
    }
  }
  for (const auto& arc : field<std::vector<std::vector<int>>>(j, "arcs")) {
    if (arc.size() != 2) throw InputError("arcs must be pairs");
    d.arcs.emplace_back(arc[0], arc[1]);
  }
  d.roots = field<std::vector<int>>(j, "roots");
  return d;
}

Json to_json(const VerificationReport& report) {
  Json violations = Json::array();
  for (const Violation& v : report.violations) {
    Json entry{{"kind", std::string(to_string(v.kind))},
               {"node", v.node},
               {"vertices", v.vertices},
               {"detail", v.detail}};
    if (v.minor_witness) {
      Json sets = Json::array();
      for (const VertexSet& s : v.minor_witness->branch_sets) sets.push_back(set_json(s));
      entry["minor_witness"] = sets;
    }
    violations.push_back(entry);
  }
  return {{"ok", report.ok()}, {"violations", violations}};
}

Json to_json(const PdsSolution& s, int target) {
  return {{"chosen", set_json(s.chosen)},
          {"size", s.chosen.size()},
          {"dominated", s.dominated},
          {"target", target}};
}

Json to_json(const CanonicalForm& form) {
  return {{"certificate", to_hex(form.certificate)}, {"witness", form.witness}};
}

CanonicalForm canonical_form_from_json(const Json& j) {
  CanonicalForm form;
  const auto hex = field<std::string>(j, "certificate");
  if (hex.size() % 2) throw InputError("certificate has odd length");
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    form.certificate.push_back(static_cast<char>(hex_value(hex[i]) * 16 + hex_value(hex[i + 1])));
  }
  form.witness = field<std::vector<Vertex>>(j, "witness");
  return form;
}

}  // namespace torsolab
