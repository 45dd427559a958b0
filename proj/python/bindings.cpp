#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "torsolab/canon.hpp"
#include "torsolab/graph_io.hpp"
#include "torsolab/json_io.hpp"
#include "torsolab/pds.hpp"
#include "torsolab/treelike.hpp"

namespace py = pybind11;
using namespace torsolab;

namespace {

// Decompositions, reports and solutions cross the boundary as JSON text in
// the command-line format; the package wraps them with json.loads.

TorsoConstraint make_constraint(const std::optional<Graph>& minor, std::optional<int> apex,
                                std::optional<int> degree) {
  if (apex && !degree) throw InputError("apex requires degree");
  TorsoConstraint c;
  if (minor && degree) {
    c = TorsoConstraint::either(*minor, apex.value_or(0), *degree);
  } else if (minor) {
    c = TorsoConstraint::excluding(*minor);
  } else if (degree) {
    c = TorsoConstraint::bounded_degree(apex.value_or(0), *degree);
  }
  c.validate();
  return c;
}

DecompositionBudget make_budget(std::optional<int> max_bag, std::optional<int> max_adhesion) {
  DecompositionBudget b;
  if (max_bag) b.max_bag_size = *max_bag;
  if (max_adhesion) b.max_adhesion = *max_adhesion;
  return b;
}

GraphFormat format_of(const std::string& name) {
  if (name == "g6") return GraphFormat::kGraph6;
  if (name == "edges") return GraphFormat::kEdgeList;
  throw InputError("format must be \"g6\" or \"edges\"");
}

std::vector<std::vector<Vertex>> sets_of(const std::vector<VertexSet>& sets) {
  std::vector<std::vector<Vertex>> out;
  for (const VertexSet& s : sets) out.push_back(s.members());
  return out;
}

}  // namespace

PYBIND11_MODULE(_torsolab, m) {
  m.doc() = "Structural decompositions, canonical forms and partial domination";

  static py::exception<Error> error(m, "TorsolabError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (e.kind() + ": " + e.what()).c_str());
    }
  });

  py::class_<Graph>(m, "Graph")
      .def(py::init([](int n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
             std::vector<Edge> es;
             for (const auto& [u, v] : edges) es.emplace_back(u, v);
             return Graph(n, es);
           }),
           py::arg("n"), py::arg("edges") = std::vector<std::pair<Vertex, Vertex>>{})
      .def_property_readonly("order", &Graph::order)
      .def_property_readonly("size", &Graph::size)
      .def("adjacent", &Graph::adjacent)
      .def("degree", &Graph::degree)
      .def("edges",
           [](const Graph& g) {
             std::vector<std::pair<Vertex, Vertex>> out;
             for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
             return out;
           })
      .def("relabel", [](const Graph& g, const std::vector<Vertex>& perm) { return relabel(g, perm); })
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "Graph(order=" + std::to_string(g.order()) + ", size=" + std::to_string(g.size()) + ")";
      });

  m.def("parse_graph", [](const std::string& text, const std::string& format) {
    return parse_graph(text, format_of(format));
  }, py::arg("text"), py::arg("format") = "edges");
  m.def("emit_graph", [](const Graph& g, const std::string& format) {
    return emit_graph(g, format_of(format));
  }, py::arg("graph"), py::arg("format") = "edges");

  m.def("decompose", [](const Graph& g, std::optional<Graph> minor, std::optional<int> apex,
                        std::optional<int> degree, std::optional<int> max_bag,
                        std::optional<int> max_adhesion) {
    return to_json(decompose(g, make_constraint(minor, apex, degree), make_budget(max_bag, max_adhesion)), g).dump();
  }, py::arg("graph"), py::kw_only(), py::arg("minor") = py::none(), py::arg("apex") = py::none(),
     py::arg("degree") = py::none(), py::arg("max_bag") = py::none(), py::arg("max_adhesion") = py::none());

  m.def("invariant_decompose", [](const Graph& g, std::optional<Graph> minor, std::optional<int> apex,
                                  std::optional<int> degree, std::optional<int> max_bag,
                                  std::optional<int> max_adhesion) {
    return to_json(invariant_decompose(g, make_constraint(minor, apex, degree), make_budget(max_bag, max_adhesion)), g)
        .dump();
  }, py::arg("graph"), py::kw_only(), py::arg("minor") = py::none(), py::arg("apex") = py::none(),
     py::arg("degree") = py::none(), py::arg("max_bag") = py::none(), py::arg("max_adhesion") = py::none());

  m.def("verify_decomposition", [](const Graph& g, const std::string& decomposition, std::optional<Graph> minor,
                                   std::optional<int> apex, std::optional<int> degree) {
    const TreeDecomposition t = tree_decomposition_from_json(parse_json(decomposition));
    return to_json(verify_decomposition(g, t, make_constraint(minor, apex, degree))).dump();
  }, py::arg("graph"), py::arg("decomposition"), py::kw_only(), py::arg("minor") = py::none(),
     py::arg("apex") = py::none(), py::arg("degree") = py::none());

  m.def("canonical_form", [](const Graph& g, std::optional<Graph> minor, std::optional<int> apex,
                             std::optional<int> degree, std::optional<int> max_bag) {
    const CanonicalForm form = canonical_form(g, make_constraint(minor, apex, degree), make_budget(max_bag, {}));
    return std::make_pair(py::bytes(form.certificate), form.witness);
  }, py::arg("graph"), py::kw_only(), py::arg("minor") = py::none(), py::arg("apex") = py::none(),
     py::arg("degree") = py::none(), py::arg("max_bag") = py::none());

  m.def("isomorphic", [](const Graph& g, const Graph& h) { return isomorphic(g, h); });

  m.def("find_minor", [](const Graph& pattern, const Graph& host) -> std::optional<std::vector<std::vector<Vertex>>> {
    const auto model = find_minor(pattern, host);
    if (!model) return std::nullopt;
    return sets_of(model->branch_sets);
  });
  m.def("find_topological_subgraph", [](const Graph& pattern, const Graph& host)
            -> std::optional<std::vector<std::vector<Vertex>>> {
    const auto model = find_topological_subgraph(pattern, host);
    if (!model) return std::nullopt;
    return model->paths;
  });

  m.def("solve_pds", [](const Graph& g, int target, std::optional<std::string> decomposition) {
    const TreeDecomposition t = decomposition ? tree_decomposition_from_json(parse_json(*decomposition))
                                              : heuristic_decomposition(g);
    return to_json(solve_pds_dp({g, target}, t), target).dump();
  }, py::arg("graph"), py::arg("target"), py::arg("decomposition") = py::none());
  m.def("solve_pds_brute", [](const Graph& g, int target) {
    return to_json(solve_pds_brute({g, target}), target).dump();
  }, py::arg("graph"), py::arg("target"));
}
