#include "torsolab/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "torsolab/canon.hpp"
#include "torsolab/graph_io.hpp"
#include "torsolab/json_io.hpp"
#include "torsolab/pds.hpp"
#include "torsolab/treelike.hpp"

namespace torsolab::cli {

namespace {

struct Options {
  std::string graph_path;
  std::string other_path;  // second graph for iso, artifact for check
  std::string format;
  std::string output;

  std::string minor_path;
  std::optional<int> apex;
  std::optional<int> degree;

  std::optional<int> max_bag;
  std::optional<int> max_adhesion;
  std::optional<std::size_t> max_steps;
  std::optional<std::size_t> max_dag_nodes;
  std::optional<int> host_ceiling;
  std::optional<int> pattern_ceiling;

  int target = 0;
  std::string decomposition_path;
  bool witness = false;
  bool invariance = false;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream text;
    text << std::cin.rdbuf();
    return text.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Graph read_graph(const std::string& path, const std::string& forced) {
  std::string format = forced;
  if (format.empty()) {
    if (ends_with(path, ".g6")) {
      format = "g6";
    } else if (ends_with(path, ".edges")) {
      format = "edges";
    } else if (ends_with(path, ".json")) {
      format = "json";
    } else {
      throw InputError("cannot infer the format of " + path + "; pass --format");
    }
  }
  const std::string text = read_file(path);
  if (format == "g6") return parse_graph(text, GraphFormat::kGraph6);
  if (format == "edges") return parse_graph(text, GraphFormat::kEdgeList);
  return graph_from_json(parse_json(text));
}

TorsoConstraint constraint_of(const Options& o) {
  if (o.apex && !o.degree) throw InputError("--apex requires --degree");
  std::optional<PatternGraph> minor;
  if (!o.minor_path.empty()) minor = read_graph(o.minor_path, "");
  TorsoConstraint c;
  if (minor && o.degree) {
    c = TorsoConstraint::either(*minor, o.apex.value_or(0), *o.degree);
  } else if (minor) {
    c = TorsoConstraint::excluding(*minor);
  } else if (o.degree) {
    c = TorsoConstraint::bounded_degree(o.apex.value_or(0), *o.degree);
  }
  c.validate();
  return c;
}

DecompositionBudget budget_of(const Options& o) {
  DecompositionBudget b;
  if (o.max_bag) b.max_bag_size = *o.max_bag;
  if (o.max_adhesion) b.max_adhesion = *o.max_adhesion;
  if (o.max_steps) b.max_search_steps = *o.max_steps;
  if (o.max_dag_nodes) b.max_dag_nodes = *o.max_dag_nodes;
  return b;
}

OracleLimits limits_of(const Options& o) {
  OracleLimits limits = OracleLimits::from_environment();
  if (o.host_ceiling) limits.host_ceiling = *o.host_ceiling;
  if (o.pattern_ceiling) limits.pattern_ceiling = *o.pattern_ceiling;
  return limits;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.output, std::ios::binary);
  if (!file || !(file << text)) throw InputError("cannot write " + o.output);
}

Json violation(const std::string& kind, const std::string& detail,
               const std::vector<Vertex>& vertices = {}) {
  return {{"kind", kind}, {"node", -1}, {"vertices", vertices}, {"detail", detail}};
}

Json report_of(Json violations) {
  const bool ok = violations.empty();
  return {{"ok", ok}, {"violations", std::move(violations)}};
}

Json check_pds(const Graph& g, const Json& artifact, const Options& o) {
  const PdsSolution claimed{VertexSet(artifact.at("chosen").get<std::vector<Vertex>>()),
                            artifact.at("dominated").get<int>()};
  const int target = artifact.at("target").get<int>();
  Json violations = Json::array();
  const int dominated = dominated_count(g, claimed.chosen);
  if (dominated != claimed.dominated) {
    violations.push_back(violation("dominated-count",
                                   "recorded " + std::to_string(claimed.dominated) +
                                       ", recomputed " + std::to_string(dominated)));
  }
  if (artifact.at("size").get<std::size_t>() != claimed.chosen.size()) {
    violations.push_back(violation("size", "size does not match the chosen set"));
  }
  if (dominated < target) {
    violations.push_back(violation("infeasible", "dominates " + std::to_string(dominated) +
                                                     " of the " + std::to_string(target) +
                                                     " required vertices"));
  }
  const TreeDecomposition t = o.decomposition_path.empty()
                                  ? heuristic_decomposition(g)
                                  : tree_decomposition_from_json(parse_json(read_file(o.decomposition_path)));
  const PdsSolution best = solve_pds_dp({g, target}, t);
  if (best.chosen.size() < claimed.chosen.size()) {
    violations.push_back(violation("not-optimal", "a set of size " +
                                                      std::to_string(best.chosen.size()) + " suffices",
                                   best.chosen.members()));
  }
  return report_of(std::move(violations));
}

Json check_witness(const Graph& g, const Json& artifact, const Options& o) {
  const CanonicalForm claimed = canonical_form_from_json(artifact);
  Json violations = Json::array();
  std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
  bool permutation = static_cast<int>(claimed.witness.size()) == g.order();
  for (Vertex v : claimed.witness) {
    permutation = permutation && v >= 0 && v < g.order() && !seen[v];
    if (permutation) seen[v] = 1;
  }
  if (!permutation) {
    violations.push_back(violation("witness", "witness is not a permutation of the vertices"));
    return report_of(std::move(violations));
  }
  if (serialize({relabel(g, claimed.witness), {}}) != claimed.certificate) {
    violations.push_back(violation("witness", "relabeling by the witness does not give the certificate"));
  }
  const CanonicalForm actual = canonical_form(g, constraint_of(o), budget_of(o), limits_of(o));
  if (actual.certificate != claimed.certificate) {
    violations.push_back(violation("certificate", "certificate is not the canonical one"));
  }
  return report_of(std::move(violations));
}

int check(const Options& o, std::ostream& out, std::ostream& err) {
  const Graph g = read_graph(o.graph_path, o.format);
  const Json artifact = parse_json(read_file(o.other_path));
  if (!artifact.is_object()) throw InputError("artifact must be a JSON object");
  if (artifact.contains("graph_ref") &&
      artifact.at("graph_ref") != to_json(TreeDecomposition{}, g).at("graph_ref")) {
    throw InputError("graph_ref does not match the graph");
  }
  Json report;
  try {
    if (artifact.contains("certificate")) {
      report = check_witness(g, artifact, o);
    } else if (artifact.contains("chosen")) {
      report = check_pds(g, artifact, o);
    } else if (artifact.contains("arcs")) {
      const TreelikeDecomposition d = treelike_from_json(artifact);
      VerificationReport r = verify_treelike(g, d, constraint_of(o), limits_of(o));
      if (r.ok() && o.invariance) r = verify_invariance(g, d, limits_of(o));
      report = to_json(r);
    } else {
      report = to_json(verify_decomposition(g, tree_decomposition_from_json(artifact),
                                            constraint_of(o), limits_of(o)));
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed artifact: ") + e.what());
  }
  emit(o, dump(report), out);
  if (report.at("ok").get<bool>()) return kExitOk;
  const Json& first = report.at("violations").at(0);
  err << "error: verification: " << first.at("kind").get<std::string>() << ": "
      << first.at("detail").get<std::string>() << "\n";
  return kExitError;
}

int dispatch(const std::string& command, const Options& o, std::ostream& out, std::ostream& err) {
  if (command == "check") return check(o, out, err);
  const Graph g = read_graph(o.graph_path, o.format);
  if (command == "decompose") {
    emit(o, dump(to_json(decompose(g, constraint_of(o), budget_of(o), limits_of(o)), g)), out);
  } else if (command == "treelike") {
    emit(o, dump(to_json(invariant_decompose(g, constraint_of(o), budget_of(o), limits_of(o)), g)), out);
  } else if (command == "canon") {
    const CanonicalForm form = canonical_form(g, constraint_of(o), budget_of(o), limits_of(o));
    emit(o, o.witness ? dump(to_json(form)) : to_hex(form.certificate) + "\n", out);
  } else if (command == "iso") {
    const Graph h = read_graph(o.other_path, o.format);
    const bool same = isomorphic(g, h, constraint_of(o), budget_of(o), limits_of(o));
    emit(o, same ? "isomorphic\n" : "not isomorphic\n", out);
    return same ? kExitOk : kExitNotIsomorphic;
  } else if (command == "pds") {
    const TreeDecomposition t =
        o.decomposition_path.empty()
            ? heuristic_decomposition(g)
            : tree_decomposition_from_json(parse_json(read_file(o.decomposition_path)));
    emit(o, dump(to_json(solve_pds_dp({g, o.target}, t), o.target)), out);
  }
  return kExitOk;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "Graph input format, inferred from the extension by default")
      ->check(CLI::IsMember({"edges", "g6", "json"}));
  sub->add_option("-o,--output", o.output, "Write the result to this file");
  sub->add_option("--host-ceiling", o.host_ceiling, "Largest host for exact oracles");
  sub->add_option("--pattern-ceiling", o.pattern_ceiling, "Largest pattern for exact oracles");
}

void add_constraint(CLI::App* sub, Options& o) {
  sub->add_option("--minor", o.minor_path, "Graph file of the excluded minor");
  sub->add_option("--apex", o.apex, "Apex budget of the degree arm")->check(CLI::NonNegativeNumber);
  sub->add_option("--degree", o.degree, "Degree bound of the degree arm")->check(CLI::NonNegativeNumber);
  sub->add_option("--max-bag", o.max_bag, "Largest bag the decomposer may form")->check(CLI::PositiveNumber);
  sub->add_option("--max-adhesion", o.max_adhesion, "Largest adhesion the decomposer may form")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--max-steps", o.max_steps, "Separator search step budget");
  sub->add_option("--max-dag-nodes", o.max_dag_nodes, "Node budget of treelike decompositions");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structural decompositions, canonical forms and partial domination for small graphs",
               "torsolab"};
  app.require_subcommand(1, 1);
  Options o;

  auto* decompose_cmd = app.add_subcommand("decompose", "Tree decomposition whose torsos meet the constraint");
  auto* treelike_cmd = app.add_subcommand("treelike", "Automorphism-invariant treelike decomposition");
  auto* canon_cmd = app.add_subcommand("canon", "Canonical certificate as lowercase hex");
  auto* iso_cmd = app.add_subcommand("iso", "Exit 0 when two graphs are isomorphic, 1 otherwise");
  auto* pds_cmd = app.add_subcommand("pds", "Smallest set dominating at least t vertices");
  auto* check_cmd = app.add_subcommand("check", "Verify a JSON artifact against a graph");

  for (CLI::App* sub : {decompose_cmd, treelike_cmd, canon_cmd, iso_cmd, pds_cmd, check_cmd}) {
    sub->add_option("graph", o.graph_path, "Graph file (.g6, .edges, .json or - for stdin)")->required();
    add_common(sub, o);
  }
  for (CLI::App* sub : {decompose_cmd, treelike_cmd, canon_cmd, iso_cmd, check_cmd}) add_constraint(sub, o);
  iso_cmd->add_option("other", o.other_path, "Second graph file")->required();
  check_cmd->add_option("artifact", o.other_path, "Decomposition, PDS solution or canonical witness JSON")
      ->required();
  check_cmd->add_flag("--invariance", o.invariance, "Also check treelike decompositions for invariance");
  canon_cmd->add_flag("--witness", o.witness, "Emit JSON with the certificate and the labeling");
  pds_cmd->add_option("--t", o.target, "Number of vertices to dominate")->required()
      ->check(CLI::NonNegativeNumber);
  for (CLI::App* sub : {pds_cmd, check_cmd}) {
    sub->add_option("--decomposition", o.decomposition_path, "Tree decomposition JSON for the DP");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << "\n";
    return kExitError;
  }

  try {
    return dispatch(app.get_subcommands().front()->get_name(), o, out, err);
  } catch (const Error& e) {
    err << "error: " << e.kind() << ": " << e.what() << "\n";
  } catch (const std::bad_alloc&) {
    err << "error: resource: out of memory\n";
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
  }
  return kExitError;
}

}  // namespace torsolab::cli
