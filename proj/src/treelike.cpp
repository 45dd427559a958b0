#include "torsolab/treelike.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <tuple>

#include "masks.hpp"
#include "part_search.hpp"

namespace torsolab {

using namespace detail;

std::string_view to_string(NodeRole role) {
  switch (role) {
    case NodeRole::kLeaf:
      return "leaf";
    case NodeRole::kSplit:
      return "split";
    case NodeRole::kJoin:
      return "join";
  }
  return "unknown";
}

NodeRole role_of(const VertexSet& bag, const VertexSet& part) {
  if (bag == part) return NodeRole::kLeaf;
  return bag.empty() ? NodeRole::kJoin : NodeRole::kSplit;
}

std::vector<std::vector<int>> TreelikeDecomposition::children() const {
  std::vector<std::vector<int>> out(nodes.size());
  for (const auto& [p, c] : arcs) {
    if (p >= 0 && p < static_cast<int>(nodes.size())) out[p].push_back(c);
  }
  return out;
}

namespace {

using NodeKey = std::tuple<std::size_t, VertexSet, VertexSet, VertexSet>;

NodeKey key_of(const TreelikeNode& n) {
  return {n.bag.size(), n.bag, n.part, n.boundary};
}

VertexSet mapped(const VertexSet& s, const Permutation& sigma) {
  std::vector<Vertex> out;
  out.reserve(s.size());
  for (Vertex v : s) out.push_back(sigma[v]);
  return VertexSet(std::move(out));
}

Graph node_torso(const Graph& g, const TreelikeDecomposition& d, int node,
                 const std::vector<std::vector<int>>& kids) {
  const TreelikeNode& x = d.nodes[node];
  auto [graph, mapping] = induced_subgraph(g, x.bag);
  auto add = [&](const VertexSet& s) {
    std::vector<Vertex> local;
    for (Vertex v : s) local.push_back(mapping[v]);
    graph = add_clique(graph, VertexSet(std::move(local)));
  };
  add(x.boundary);
  for (int child : kids[node]) add(d.nodes[child].boundary);
  return graph;
}

class DagBuilder {
 public:
  DagBuilder(PartSearch& search, std::size_t max_nodes)
      : search_(search), max_nodes_(max_nodes) {}

  // nullopt: unsolvable. An empty list marks a leaf.
  const std::optional<std::vector<Split>>& alternatives(Mask part, Mask boundary) {
    const auto key = std::make_pair(part, boundary);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    search_.tick();
    std::optional<std::vector<Split>> result;
    if (search_.leaf_ok(part, boundary)) {
      result.emplace();
    } else {
      const int max_size = search_.max_separator_size(part, boundary);
      for (int s = 0; s <= max_size && !result; ++s) {
        std::vector<Split> found;
        search_.for_each_split(part, boundary, s, [&](const Split& split) {
          for (const auto& [child, attach] : split.children) {
            if (!alternatives(child, attach)) return false;
          }
          found.push_back(split);
          return false;
        });
        if (!found.empty()) result = std::move(found);
      }
    }
    return memo_.emplace(key, std::move(result)).first->second;
  }

  // Node ids of every alternative for a solvable part.
  std::vector<int> expand(Mask part, Mask boundary) {
    const auto key = std::make_pair(part, boundary);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    const auto& alts = *alternatives(part, boundary);
    std::vector<int> ids;
    if (alts.empty()) {
      ids.push_back(add_node(part, part, boundary));
    } else {
      for (const Split& split : alts) {
        const int id = add_node(split.bag, part, boundary);
        ids.push_back(id);
        for (const auto& [child, attach] : split.children) {
          for (int c : expand(child, attach)) arcs_.emplace_back(id, c);
        }
      }
    }
    entries_.emplace(key, ids);
    return ids;
  }

  int add_node(Mask bag, Mask part, Mask boundary) {
    if (nodes_.size() >= max_nodes_) {
      throw ResourceError("treelike decomposition exceeds " + std::to_string(max_nodes_) +
                          " nodes");
    }
    const VertexSet b = to_set(bag);
    const VertexSet p = to_set(part);
    nodes_.push_back({b, p, to_set(boundary), role_of(b, p)});
    return static_cast<int>(nodes_.size()) - 1;
  }

  const std::vector<TreelikeNode>& nodes() const { return nodes_; }
  const std::vector<std::pair<int, int>>& arcs() const { return arcs_; }

 private:
  PartSearch& search_;
  std::size_t max_nodes_;
  std::map<std::pair<Mask, Mask>, std::optional<std::vector<Split>>> memo_;
  std::map<std::pair<Mask, Mask>, std::vector<int>> entries_;
  std::vector<TreelikeNode> nodes_;
  std::vector<std::pair<int, int>> arcs_;
};

}  // namespace

TreelikeDecomposition normalized(const std::vector<TreelikeNode>& nodes,
                                 const std::vector<std::pair<int, int>>& arcs) {
  std::map<NodeKey, int> index;
  for (const TreelikeNode& n : nodes) index.emplace(key_of(n), 0);
  TreelikeDecomposition out;
  for (auto& [key, id] : index) {
    id = static_cast<int>(out.nodes.size());
    const auto& [size, bag, part, boundary] = key;
    out.nodes.push_back({bag, part, boundary, role_of(bag, part)});
  }
  std::set<std::pair<int, int>> unique;
  for (const auto& [p, c] : arcs) {
    unique.emplace(index.at(key_of(nodes[p])), index.at(key_of(nodes[c])));
  }
  out.arcs.assign(unique.begin(), unique.end());
  std::vector<char> has_parent(out.nodes.size(), 0);
  for (const auto& arc : out.arcs) has_parent[arc.second] = 1;
  for (std::size_t i = 0; i < out.nodes.size(); ++i) {
    if (!has_parent[i]) out.roots.push_back(static_cast<int>(i));
  }
  return out;
}

TreelikeDecomposition invariant_decompose(const Graph& g, const TorsoConstraint& c,
                                          const DecompositionBudget& budget,
                                          const OracleLimits& limits) {
  c.validate();
  if (g.order() > 64) throw SizeLimitError("invariant_decompose supports at most 64 vertices");
  if (g.order() == 0) return normalized({{VertexSet{}, VertexSet{}, VertexSet{}, NodeRole::kLeaf}}, {});

  PartSearch search(g, c, budget, limits);
  DagBuilder dag(search, budget.max_dag_nodes);
  const Mask all = search.all();
  try {
    if (search.leaf_ok(all, 0)) {
      dag.add_node(all, all, 0);
      return normalized(dag.nodes(), dag.arcs());
    }
    const auto comps = component_masks(search.adj(), all);
    bool solvable = true;
    if (comps.size() > 1) {
      for (Mask comp : comps) solvable = solvable && dag.alternatives(comp, 0).has_value();
    } else {
      solvable = dag.alternatives(all, 0).has_value();
    }
    if (solvable) {
      if (comps.size() > 1) {
        std::vector<int> entries;
        for (Mask comp : comps) {
          const auto ids = dag.expand(comp, 0);
          entries.insert(entries.end(), ids.begin(), ids.end());
        }
        const int root = dag.add_node(0, all, 0);
        auto arcs = dag.arcs();
        for (int id : entries) arcs.emplace_back(root, id);
        return normalized(dag.nodes(), arcs);
      }
      dag.expand(all, 0);
      return normalized(dag.nodes(), dag.arcs());
    }
  } catch (const SearchExhausted&) {
    throw DecompositionNotFound("search step budget exhausted",
                                TreeDecomposition{{VertexSet::range(g.order())}, {0}},
                                VertexSet::range(g.order()), {});
  }
  // Same admissibility as decompose, which reports the partial result.
  decompose(g, c, budget, limits);
  throw DecompositionNotFound("no decomposition within the budget satisfies the constraint",
                              TreeDecomposition{{VertexSet::range(g.order())}, {0}},
                              VertexSet::range(g.order()), {});
}

TreelikeDecomposition from_tree_decomposition(const Graph& g, const TreeDecomposition& t) {
  VerificationReport report = verify_axioms(g, t);
  if (!report.ok()) throw VerificationError(std::move(report));
  const auto kids = t.children();
  const int size = static_cast<int>(t.size());
  std::vector<VertexSet> below(t.size());
  std::vector<int> order;  // preorder; reversed it lists children first
  std::vector<int> stack{t.root()};
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    order.push_back(x);
    for (int k : kids[x]) stack.push_back(k);
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    VertexSet acc = t.bags[*it];
    for (int k : kids[*it]) acc = acc.united(below[k]);
    below[*it] = std::move(acc);
  }
  std::vector<TreelikeNode> nodes;
  std::vector<std::pair<int, int>> arcs;
  for (int i = 0; i < size; ++i) {
    nodes.push_back({t.bags[i], below[i], t.adhesion(i), role_of(t.bags[i], below[i])});
    if (t.parent[i] != i) arcs.emplace_back(t.parent[i], i);
  }
  return normalized(nodes, arcs);
}

Graph torso(const Graph& g, const TreelikeDecomposition& d, int node) {
  if (node < 0 || node >= static_cast<int>(d.size())) {
    throw InputError("node " + std::to_string(node) + " not in decomposition");
  }
  for (Vertex v : d.nodes[node].bag) {
    if (v < 0 || v >= g.order()) throw InputError("bag vertex out of range");
  }
  return node_torso(g, d, node, d.children());
}

namespace {

bool well_formed(const Graph& g, const TreelikeDecomposition& d, VerificationReport& report) {
  auto fail = [&](int node, std::string detail) {
    report.violations.push_back({ViolationKind::kMalformed, node, {}, {}, std::move(detail)});
    return false;
  };
  const int size = static_cast<int>(d.size());
  if (size == 0) return fail(-1, "no nodes");
  std::set<NodeKey> seen;
  for (int i = 0; i < size; ++i) {
    const TreelikeNode& x = d.nodes[i];
    for (const VertexSet* s : {&x.bag, &x.part, &x.boundary}) {
      for (Vertex v : *s) {
        if (v < 0 || v >= g.order()) return fail(i, "vertex out of range");
      }
    }
    if (x.role != role_of(x.bag, x.part)) return fail(i, "role does not match bag and part");
    if (!seen.insert(key_of(x)).second) return fail(i, "duplicate node");
  }
  std::vector<int> indegree(d.size(), 0);
  for (const auto& [p, c] : d.arcs) {
    if (p < 0 || p >= size || c < 0 || c >= size) return fail(-1, "arc endpoint out of range");
    if (p == c) return fail(p, "self arc");
    ++indegree[c];
  }
  std::vector<int> roots;
  for (int i = 0; i < size; ++i)
    if (indegree[i] == 0) roots.push_back(i);
  if (roots.empty() || roots != d.roots) return fail(-1, "roots are not the nodes without parents");
  const auto kids = d.children();
  std::vector<int> ready = roots;
  int visited = 0;
  while (!ready.empty()) {
    const int x = ready.back();
    ready.pop_back();
    ++visited;
    for (int k : kids[x])
      if (--indegree[k] == 0) ready.push_back(k);
  }
  if (visited != size) return fail(-1, "arcs contain a cycle");
  return true;
}

void check_parts(const Graph& g, const TreelikeDecomposition& d, VerificationReport& report) {
  auto fail = [&](int node, std::vector<Vertex> vertices, std::string detail) {
    report.violations.push_back(
        {ViolationKind::kConnectivity, node, std::move(vertices), {}, std::move(detail)});
  };
  const VertexSet everything = VertexSet::range(g.order());
  for (int r : d.roots) {
    if (d.nodes[r].part != everything || !d.nodes[r].boundary.empty()) {
      fail(r, {}, "root part is not the whole graph with empty boundary");
    }
  }
  const auto kids = d.children();
  for (int i = 0; i < static_cast<int>(d.size()); ++i) {
    const TreelikeNode& x = d.nodes[i];
    if (!x.boundary.is_subset_of(x.bag) || !x.bag.is_subset_of(x.part)) {
      fail(i, {}, "bag must contain the boundary and lie inside the part");
      continue;
    }
    std::set<std::pair<VertexSet, VertexSet>> parts;
    for (int k : kids[i]) parts.emplace(d.nodes[k].part, d.nodes[k].boundary);
    VertexSet covered = x.bag;
    std::vector<int> owner(static_cast<std::size_t>(g.order()), -1);
    int index = 0;
    bool ok = true;
    for (const auto& [part, boundary] : parts) {
      if (!part.is_subset_of(x.part) || part.intersected(x.bag) != boundary) {
        fail(i, boundary.members(), "child boundary differs from child part ∩ bag");
        ok = false;
        break;
      }
      for (Vertex v : part.without(boundary)) {
        if (owner[v] >= 0) {
          fail(i, {v}, "vertex lies inside two child parts");
          ok = false;
        }
        owner[v] = index;
      }
      covered = covered.united(part);
      ++index;
    }
    if (!ok) continue;
    if (covered != x.part) {
      fail(i, x.part.without(covered).members(), "bag and child parts do not cover the part");
      continue;
    }
    // Interior vertices may only touch their own part.
    std::vector<const VertexSet*> boundary_of;
    for (const auto& entry : parts) boundary_of.push_back(&entry.second);
    for (const Edge& e : g.edges()) {
      const int a = owner[e.u];
      const int b = owner[e.v];
      if (a < 0 && b < 0) continue;
      if (!x.part.contains(e.u) || !x.part.contains(e.v)) continue;
      bool allowed = a == b;
      if (a >= 0 && b < 0) allowed = boundary_of[a]->contains(e.v);
      if (b >= 0 && a < 0) allowed = boundary_of[b]->contains(e.u);
      if (!allowed) {
        fail(i, {e.u, e.v}, "edge leaves a child part");
        break;
      }
    }
  }
}

}  // namespace

VerificationReport verify_treelike(const Graph& g, const TreelikeDecomposition& d,
                                   const TorsoConstraint& c, const OracleLimits& limits) {
  c.validate();
  VerificationReport report;
  if (!well_formed(g, d, report)) return report;
  std::vector<char> covered(static_cast<std::size_t>(g.order()), 0);
  for (const TreelikeNode& x : d.nodes)
    for (Vertex v : x.bag) covered[v] = 1;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (!covered[v]) {
      report.violations.push_back({ViolationKind::kCoverage, -1, {v}, {}, "vertex in no bag"});
    }
  }
  for (const Edge& e : g.edges()) {
    const bool hit = std::any_of(d.nodes.begin(), d.nodes.end(), [&](const TreelikeNode& x) {
      return x.bag.contains(e.u) && x.bag.contains(e.v);
    });
    if (!hit) {
      report.violations.push_back(
          {ViolationKind::kEdgeCoverage, -1, {e.u, e.v}, {}, "edge in no bag"});
    }
  }
  check_parts(g, d, report);
  const auto kids = d.children();
  for (int i = 0; i < static_cast<int>(d.size()); ++i) {
    const VertexSet& bag = d.nodes[i].bag;
    TorsoCheck check = check_torso(node_torso(g, d, i, kids), c, limits);
    for (Violation& v : check.violations) {
      v.node = i;
      for (Vertex& x : v.vertices) x = bag[static_cast<std::size_t>(x)];
      if (v.minor_witness) {
        for (VertexSet& s : v.minor_witness->branch_sets) {
          std::vector<Vertex> host;
          for (Vertex x : s) host.push_back(bag[static_cast<std::size_t>(x)]);
          s = VertexSet(std::move(host));
        }
      }
      report.violations.push_back(std::move(v));
    }
  }
  return report;
}

VerificationReport verify_invariance(const Graph& g, const TreelikeDecomposition& d,
                                     const OracleLimits& limits) {
  VerificationReport report;
  auto unverifiable = [&](std::string detail) {
    report.violations.push_back({ViolationKind::kUnverifiable, -1, {}, {}, std::move(detail)});
    return report;
  };
  if (g.order() > limits.host_ceiling) {
    return unverifiable("graph with " + std::to_string(g.order()) +
                        " vertices exceeds the automorphism oracle ceiling");
  }
  std::vector<Permutation> group;
  try {
    group = automorphisms(g, limits);
  } catch (const ResourceError& e) {
    return unverifiable(e.what());
  }
  std::map<NodeKey, int> index;
  for (int i = 0; i < static_cast<int>(d.size()); ++i) index.emplace(key_of(d.nodes[i]), i);
  const std::set<std::pair<int, int>> arcs(d.arcs.begin(), d.arcs.end());
  auto describe = [](const Permutation& sigma) {
    std::string out = "automorphism [";
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      out += (i ? "," : "") + std::to_string(sigma[i]);
    }
    return out + "]";
  };
  for (const Permutation& sigma : group) {
    std::vector<int> image(d.size(), -1);
    for (int i = 0; i < static_cast<int>(d.size()); ++i) {
      const TreelikeNode& x = d.nodes[i];
      TreelikeNode y{mapped(x.bag, sigma), mapped(x.part, sigma), mapped(x.boundary, sigma),
                     x.role};
      auto it = index.find(key_of(y));
      if (it == index.end()) {
        report.violations.push_back({ViolationKind::kInvariance, i, y.bag.members(), {},
                                     describe(sigma) + " maps the bag outside the node set"});
        return report;
      }
      image[i] = it->second;
    }
    for (const auto& [p, c] : d.arcs) {
      if (!arcs.contains({image[p], image[c]})) {
        report.violations.push_back({ViolationKind::kInvariance, p, d.nodes[c].bag.members(), {},
                                     describe(sigma) + " maps an arc outside the arc set"});
        return report;
      }
    }
  }
  return report;
}

}  // namespace torsolab
