#include "torsolab/decomposition.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

#include "masks.hpp"
#include "part_search.hpp"

namespace torsolab {

using namespace detail;

TorsoConstraint TorsoConstraint::excluding(PatternGraph pattern) {
  TorsoConstraint c;
  c.excluded_minor = std::move(pattern);
  c.degree_bound.reset();
  return c;
}

TorsoConstraint TorsoConstraint::bounded_degree(int apices, int degree) {
  TorsoConstraint c;
  c.apex_budget = apices;
  c.degree_bound = degree;
  return c;
}

TorsoConstraint TorsoConstraint::either(PatternGraph pattern, int apices,
                                        int degree) {
  TorsoConstraint c = bounded_degree(apices, degree);
  c.excluded_minor = std::move(pattern);
  return c;
}

void TorsoConstraint::validate() const {
  if (!excluded_minor && !degree_bound) {
    throw InputError("torso constraint needs an excluded minor or a degree bound");
  }
  if (apex_budget < 0) throw InputError("apex budget must be non-negative");
  if (degree_bound && *degree_bound < 0) {
    throw InputError("degree bound must be non-negative");
  }
}

int TreeDecomposition::root() const {
  for (std::size_t i = 0; i < parent.size(); ++i) {
    if (parent[i] == static_cast<int>(i)) return static_cast<int>(i);
  }
  return -1;
}

VertexSet TreeDecomposition::adhesion(int node) const {
  if (parent[node] == node) return {};
  return bags[node].intersected(bags[parent[node]]);
}

std::vector<std::vector<int>> TreeDecomposition::children() const {
  std::vector<std::vector<int>> out(parent.size());
  for (std::size_t i = 0; i < parent.size(); ++i) {
    if (parent[i] != static_cast<int>(i)) out[parent[i]].push_back(static_cast<int>(i));
  }
  return out;
}

namespace {

constexpr std::array<std::pair<ViolationKind, std::string_view>, 8> kKindNames{{
    {ViolationKind::kMalformed, "malformed"},
    {ViolationKind::kCoverage, "coverage"},
    {ViolationKind::kEdgeCoverage, "edge-coverage"},
    {ViolationKind::kConnectivity, "connectivity"},
    {ViolationKind::kTorsoMinor, "torso-minor"},
    {ViolationKind::kTorsoDegree, "torso-degree"},
    {ViolationKind::kUnverifiable, "unverifiable"},
    {ViolationKind::kInvariance, "invariance"},
}};

std::string summary(const VerificationReport& report) {
  std::string out;
  for (const Violation& v : report.violations) {
    if (!out.empty()) out += ", ";
    out += to_string(v.kind);
    if (v.node >= 0) out += " at node " + std::to_string(v.node);
  }
  return out.empty() ? "ok" : out;
}

// Torso without the validity check; labels follow bag order.
Graph raw_torso(const Graph& g, const TreeDecomposition& t, int node,
                const std::vector<std::vector<int>>& kids) {
  const VertexSet& bag = t.bags[node];
  auto [graph, mapping] = induced_subgraph(g, bag);
  auto add = [&](const VertexSet& adhesion) {
    std::vector<Vertex> local;
    for (Vertex v : adhesion) local.push_back(mapping[v]);
    graph = add_clique(graph, VertexSet(std::move(local)));
  };
  if (t.parent[node] != node) add(t.adhesion(node));
  for (int child : kids[node]) add(t.adhesion(child));
  return graph;
}

bool well_formed(const Graph& g, const TreeDecomposition& t,
                 VerificationReport& report) {
  auto fail = [&](int node, std::string detail) {
    report.violations.push_back({ViolationKind::kMalformed, node, {}, {}, std::move(detail)});
    return false;
  };
  const int size = static_cast<int>(t.bags.size());
  if (size == 0) return fail(-1, "no nodes");
  if (t.parent.size() != t.bags.size()) return fail(-1, "parent list length differs from bag count");
  int roots = 0;
  for (int i = 0; i < size; ++i) {
    if (t.parent[i] < 0 || t.parent[i] >= size) return fail(i, "parent out of range");
    roots += t.parent[i] == i ? 1 : 0;
    for (Vertex v : t.bags[i]) {
      if (v < 0 || v >= g.order()) return fail(i, "bag vertex out of range");
    }
  }
  if (roots != 1) return fail(-1, "expected exactly one root, found " + std::to_string(roots));
  for (int i = 0; i < size; ++i) {
    int x = i;
    for (int steps = 0; t.parent[x] != x; ++steps) {
      if (steps > size) return fail(i, "parent pointers form a cycle");
      x = t.parent[x];
    }
  }
  return true;
}

void check_axioms(const Graph& g, const TreeDecomposition& t,
                  VerificationReport& report) {
  const int size = static_cast<int>(t.bags.size());
  std::vector<int> first_bag(static_cast<std::size_t>(g.order()), -1);
  for (int i = 0; i < size; ++i) {
    for (Vertex v : t.bags[i]) {
      if (first_bag[v] < 0) first_bag[v] = i;
    }
  }
  for (Vertex v = 0; v < g.order(); ++v) {
    if (first_bag[v] < 0) {
      report.violations.push_back({ViolationKind::kCoverage, -1, {v}, {}, "vertex in no bag"});
    }
  }
  for (const Edge& e : g.edges()) {
    bool covered = false;
    for (int i = 0; i < size && !covered; ++i) {
      covered = t.bags[i].contains(e.u) && t.bags[i].contains(e.v);
    }
    if (!covered) {
      report.violations.push_back(
          {ViolationKind::kEdgeCoverage, -1, {e.u, e.v}, {}, "edge in no bag"});
    }
  }
  for (Vertex v = 0; v < g.order(); ++v) {
    int tops = 0;
    for (int i = 0; i < size; ++i) {
      if (!t.bags[i].contains(v)) continue;
      if (t.parent[i] == i || !t.bags[t.parent[i]].contains(v)) {
        if (++tops == 2) {
          report.violations.push_back({ViolationKind::kConnectivity, i, {v}, {},
                                       "bags containing the vertex are not connected"});
        }
      }
    }
  }
}

Violation relabel_violation(Violation v, int node, const VertexSet& bag) {
  v.node = node;
  for (Vertex& x : v.vertices) x = bag[static_cast<std::size_t>(x)];
  if (v.minor_witness) {
    for (VertexSet& s : v.minor_witness->branch_sets) {
      std::vector<Vertex> mapped;
      for (Vertex x : s) mapped.push_back(bag[static_cast<std::size_t>(x)]);
      s = VertexSet(std::move(mapped));
    }
  }
  return v;
}

// Apex candidates: removing a vertex outside N[high] never helps.
std::optional<VertexSet> find_apex_set(const Graph& torso, int apices, int bound) {
  const int n = torso.order();
  std::vector<Vertex> high;
  for (Vertex v = 0; v < n; ++v)
    if (torso.degree(v) > bound) high.push_back(v);
  if (high.empty()) return VertexSet{};
  std::vector<Vertex> pool;
  for (Vertex h : high) {
    pool.push_back(h);
    for (Vertex w : torso.neighbors(h)) pool.push_back(w);
  }
  const VertexSet candidates(std::move(pool));
  const int m = static_cast<int>(candidates.size());
  std::vector<char> removed(static_cast<std::size_t>(n), 0);
  for (int k = 1; k <= std::min(apices, m); ++k) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      for (int i : idx) removed[candidates[i]] = 1;
      bool ok = true;
      for (Vertex v = 0; v < n && ok; ++v) {
        if (removed[v]) continue;
        int deg = 0;
        for (Vertex w : torso.neighbors(v)) deg += removed[w] ? 0 : 1;
        ok = deg <= bound;
      }
      std::vector<Vertex> chosen;
      for (int i : idx) {
        removed[candidates[i]] = 0;
        chosen.push_back(candidates[i]);
      }
      if (ok) return VertexSet(std::move(chosen));
      int i = k - 1;
      while (i >= 0 && idx[i] == m - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(ViolationKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "unknown";
}

std::optional<ViolationKind> violation_kind_from(std::string_view name) {
  for (const auto& [k, n] : kKindNames)
    if (n == name) return k;
  return std::nullopt;
}

bool VerificationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

VerificationError::VerificationError(VerificationReport report)
    : Error("verification", summary(report)), report_(std::move(report)) {}

DecompositionNotFound::DecompositionNotFound(const std::string& detail,
                                             TreeDecomposition partial,
                                             VertexSet part, VertexSet boundary)
    : Error("decomposition-not-found", detail),
      partial_(std::move(partial)),
      part_(std::move(part)),
      boundary_(std::move(boundary)) {}

TorsoCheck check_torso(const Graph& torso, const TorsoConstraint& c,
                       const OracleLimits& limits) {
  c.validate();
  TorsoCheck out;
  if (c.degree_bound) {
    if (auto apex = find_apex_set(torso, c.apex_budget, *c.degree_bound)) {
      out.ok = true;
      out.apex_set = std::move(apex);
      return out;
    }
  }
  if (c.excluded_minor) {
    const PatternGraph& h = *c.excluded_minor;
    if (torso.order() > limits.host_ceiling || h.order() > limits.pattern_ceiling) {
      out.violations.push_back(
          {ViolationKind::kUnverifiable, -1, {}, {},
           "torso with " + std::to_string(torso.order()) +
               " vertices exceeds the minor oracle ceiling"});
    } else if (auto model = find_minor(h, torso, limits)) {
      out.violations.push_back({ViolationKind::kTorsoMinor, -1, {}, std::move(model),
                                "excluded minor present in torso"});
    } else {
      out.ok = true;
      return out;
    }
  }
  if (c.degree_bound) {
    Violation v{ViolationKind::kTorsoDegree, -1, {}, {}, {}};
    for (Vertex x = 0; x < torso.order(); ++x)
      if (torso.degree(x) > *c.degree_bound) v.vertices.push_back(x);
    v.detail = "no apex set of size <= " + std::to_string(c.apex_budget) +
               " leaves maximum degree <= " + std::to_string(*c.degree_bound);
    out.violations.push_back(std::move(v));
  }
  return out;
}

VerificationReport verify_axioms(const Graph& g, const TreeDecomposition& t) {
  VerificationReport report;
  if (well_formed(g, t, report)) check_axioms(g, t, report);
  return report;
}

Graph torso(const Graph& g, const TreeDecomposition& t, int node) {
  VerificationReport report = verify_axioms(g, t);
  if (!report.ok()) throw VerificationError(std::move(report));
  if (node < 0 || node >= static_cast<int>(t.size())) {
    throw InputError("node " + std::to_string(node) + " not in decomposition");
  }
  return raw_torso(g, t, node, t.children());
}

VerificationReport verify_decomposition(const Graph& g,
                                        const TreeDecomposition& t,
                                        const TorsoConstraint& c,
                                        const OracleLimits& limits) {
  c.validate();
  VerificationReport report;
  if (!well_formed(g, t, report)) return report;
  check_axioms(g, t, report);
  const auto kids = t.children();
  for (int node = 0; node < static_cast<int>(t.size()); ++node) {
    TorsoCheck check = check_torso(raw_torso(g, t, node, kids), c, limits);
    for (Violation& v : check.violations) {
      report.violations.push_back(relabel_violation(std::move(v), node, t.bags[node]));
    }
  }
  return report;
}

std::optional<VertexSet> find_separator(const Graph& g, const VertexSet& w,
                                        int max_size) {
  for (Vertex v : w) {
    if (v < 0 || v >= g.order()) throw InputError("w is not a subset of V(g)");
  }
  if (g.order() > 64) throw SizeLimitError("find_separator supports at most 64 vertices");
  const auto adj = masks_of(g);
  const Mask target = to_mask(w);
  const int bound = static_cast<int>(w.size()) / 2;
  std::optional<VertexSet> found;
  for (int s = 0; s <= std::min(max_size, g.order()) && !found; ++s) {
    for_each_subset(full_mask(g.order()), s, [&](Mask sep) {
      for (Mask comp : component_masks(adj, full_mask(g.order()) & ~sep)) {
        if (count(comp & target) > bound) return false;
      }
      found = to_set(sep);
      return true;
    });
  }
  return found;
}

namespace {

struct Subtree {
  std::vector<Mask> bags;
  std::vector<int> parent;  // local; parent[0] == 0
};

Subtree assemble(Mask bag, const std::vector<Subtree>& kids) {
  Subtree out{{bag}, {0}};
  for (const Subtree& kid : kids) {
    const int offset = static_cast<int>(out.bags.size());
    for (std::size_t i = 0; i < kid.bags.size(); ++i) {
      out.bags.push_back(kid.bags[i]);
      out.parent.push_back(i == 0 ? 0 : kid.parent[i] + offset);
    }
  }
  return out;
}

TreeDecomposition to_decomposition(const Subtree& s) {
  TreeDecomposition t;
  for (Mask m : s.bags) t.bags.push_back(to_set(m));
  t.parent = s.parent;
  return t;
}

class TreeBuilder {
 public:
  explicit TreeBuilder(PartSearch& search) : search_(search) {}

  std::optional<Subtree> solve(Mask part, Mask boundary) {
    const auto key = std::make_pair(part, boundary);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    search_.tick();
    std::optional<Subtree> result;
    if (search_.leaf_ok(part, boundary)) {
      result = Subtree{{part}, {0}};
    } else {
      const int max_size = search_.max_separator_size(part, boundary);
      for (int s = 0; s <= max_size && !result; ++s) {
        search_.for_each_split(part, boundary, s, [&](const Split& split) {
          std::vector<Subtree> kids;
          for (const auto& [child, attach] : split.children) {
            auto sub = solve(child, attach);
            if (!sub) return false;
            kids.push_back(std::move(*sub));
          }
          result = assemble(split.bag, kids);
          return true;
        });
      }
    }
    memo_.emplace(key, result);
    return result;
  }

  // Axiom-valid fallback: the first split whose own torso passes, with
  // unsolvable children kept as single bags.
  Subtree partial(Mask part, Mask boundary, std::pair<Mask, Mask>& offending) {
    if (auto done = solve(part, boundary)) return *done;
    const int max_size = search_.max_separator_size(part, boundary);
    std::optional<Subtree> result;
    offending = {part, boundary};
    for (int s = 0; s <= max_size && !result; ++s) {
      search_.for_each_split(part, boundary, s, [&](const Split& split) {
        std::vector<Subtree> kids;
        bool marked = false;
        for (const auto& [child, attach] : split.children) {
          if (auto sub = solve(child, attach)) {
            kids.push_back(std::move(*sub));
          } else {
            if (!marked) offending = {child, attach};
            marked = true;
            kids.push_back(Subtree{{child}, {0}});
          }
        }
        result = assemble(split.bag, kids);
        return true;
      });
    }
    return result ? *result : Subtree{{part}, {0}};
  }

 private:
  PartSearch& search_;
  std::map<std::pair<Mask, Mask>, std::optional<Subtree>> memo_;
};

// Preorder renumbering from the root, children in ascending old index.
// `where`, when given, receives old -> new indices.
TreeDecomposition renumber(const TreeDecomposition& t,
                           std::vector<int>* where = nullptr) {
  const auto kids = t.children();
  TreeDecomposition out;
  std::vector<int> stack{t.root()};
  std::vector<int> new_index(t.size(), -1);
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    new_index[x] = static_cast<int>(out.bags.size());
    out.bags.push_back(t.bags[x]);
    out.parent.push_back(t.parent[x] == x ? new_index[x] : new_index[t.parent[x]]);
    for (auto it = kids[x].rbegin(); it != kids[x].rend(); ++it) stack.push_back(*it);
  }
  if (where) *where = std::move(new_index);
  return out;
}

// Folds node i into its tree neighbor j (bag(i) ⊆ bag(j)); returns the
// folded tree and the new index of j.
std::pair<TreeDecomposition, int> fold(const TreeDecomposition& t, int i, int j) {
  TreeDecomposition m = t;
  if (t.parent[i] != j) m.parent[j] = t.parent[i] == i ? j : t.parent[i];
  for (int x = 0; x < static_cast<int>(t.size()); ++x) {
    if (x != j && x != i && t.parent[x] == i) m.parent[x] = j;
  }
  TreeDecomposition dropped;
  std::vector<int> shift(t.size());
  for (int x = 0, k = 0; x < static_cast<int>(t.size()); ++x) {
    shift[x] = k;
    if (x != i) ++k;
  }
  for (int x = 0; x < static_cast<int>(t.size()); ++x) {
    if (x == i) continue;
    dropped.bags.push_back(m.bags[x]);
    dropped.parent.push_back(shift[m.parent[x]]);
  }
  std::vector<int> where;
  TreeDecomposition out = renumber(dropped, &where);
  return {std::move(out), where[shift[j]]};
}

// Removes non-empty bags contained in a neighboring bag whenever the neighbor's torso
// still satisfies the constraint afterwards.
TreeDecomposition simplify(TreeDecomposition t, PartSearch& search) {
  bool changed = true;
  while (changed) {
    changed = false;
    const auto kids = t.children();
    for (int i = 0; i < static_cast<int>(t.size()) && !changed; ++i) {
      if (t.bags[i].empty()) continue;  // the synthetic root of a disconnected graph
      std::vector<int> around;
      if (t.parent[i] != i) around.push_back(t.parent[i]);
      around.insert(around.end(), kids[i].begin(), kids[i].end());
      for (int j : around) {
        if (!t.bags[i].is_subset_of(t.bags[j])) continue;
        auto [candidate, nj] = fold(t, i, j);
        std::vector<Mask> cliques;
        if (candidate.parent[nj] != nj) cliques.push_back(to_mask(candidate.adhesion(nj)));
        const auto folded_kids = candidate.children();
        for (int child : folded_kids[nj]) {
          cliques.push_back(to_mask(candidate.adhesion(child)));
        }
        if (search.torso_ok(to_mask(candidate.bags[nj]), cliques)) {
          t = std::move(candidate);
          changed = true;
          break;
        }
      }
    }
  }
  return t;
}

}  // namespace

TreeDecomposition decompose(const Graph& g, const TorsoConstraint& c,
                            const DecompositionBudget& budget,
                            const OracleLimits& limits) {
  c.validate();
  if (g.order() > 64) throw SizeLimitError("decompose supports at most 64 vertices");
  if (g.order() == 0) return TreeDecomposition{{VertexSet{}}, {0}};

  PartSearch search(g, c, budget, limits);
  TreeBuilder builder(search);
  const Mask all = search.all();
  const auto comps = component_masks(search.adj(), all);

  std::optional<Subtree> tree;
  try {
    if (search.leaf_ok(all, 0)) {
      tree = Subtree{{all}, {0}};
    } else if (comps.size() > 1) {
      std::vector<Subtree> kids;
      for (Mask comp : comps) {
        auto sub = builder.solve(comp, 0);
        if (!sub) break;
        kids.push_back(std::move(*sub));
      }
      if (kids.size() == comps.size()) tree = assemble(0, kids);
    } else {
      tree = builder.solve(all, 0);
    }
  } catch (const SearchExhausted&) {
    throw DecompositionNotFound("search step budget exhausted",
                                TreeDecomposition{{VertexSet::range(g.order())}, {0}},
                                VertexSet::range(g.order()), {});
  }

  if (!tree) {
    std::pair<Mask, Mask> offending{all, 0};
    Subtree partial{{all}, {0}};
    try {
      if (comps.size() > 1) {
        std::vector<Subtree> kids;
        bool marked = false;
        for (Mask comp : comps) {
          std::pair<Mask, Mask> here{comp, 0};
          kids.push_back(builder.partial(comp, 0, here));
          if (!marked && !builder.solve(comp, 0)) {
            offending = here;
            marked = true;
          }
        }
        partial = assemble(0, kids);
      } else {
        partial = builder.partial(all, 0, offending);
      }
    } catch (const SearchExhausted&) {
    }
    throw DecompositionNotFound("no decomposition within the budget satisfies the constraint",
                                renumber(to_decomposition(partial)),
                                to_set(offending.first), to_set(offending.second));
  }

  TreeDecomposition out = simplify(renumber(to_decomposition(*tree)), search);
  VerificationReport report = verify_decomposition(g, out, c, limits);
  if (!report.ok()) {
    throw std::logic_error("decompose produced an invalid decomposition: " +
                           summary(report));
  }
  return out;
}

TreeDecomposition elimination_decomposition(const Graph& g,
                                            const std::vector<Vertex>& order) {
  const int n = g.order();
  if (static_cast<int>(order.size()) != n) throw InputError("ordering length differs from n");
  std::vector<int> position(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    if (order[i] < 0 || order[i] >= n || position[order[i]] >= 0) {
      throw InputError("ordering is not a permutation");
    }
    position[order[i]] = i;
  }
  if (n == 0) return TreeDecomposition{{VertexSet{}}, {0}};

  std::vector<std::vector<char>> fill(static_cast<std::size_t>(n),
                                      std::vector<char>(static_cast<std::size_t>(n), 0));
  for (const Edge& e : g.edges()) fill[e.u][e.v] = fill[e.v][e.u] = 1;

  TreeDecomposition t;
  t.bags.resize(static_cast<std::size_t>(n));
  t.parent.assign(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const Vertex v = order[i];
    std::vector<Vertex> later;
    for (Vertex w = 0; w < n; ++w)
      if (fill[v][w] && position[w] > i) later.push_back(w);
    for (Vertex a : later)
      for (Vertex b : later)
        if (a != b) fill[a][b] = 1;
    int parent = -1;
    for (Vertex w : later)
      if (parent < 0 || position[w] < parent) parent = position[w];
    later.push_back(v);
    t.bags[i] = VertexSet(std::move(later));
    t.parent[i] = parent;
  }
  const int root = n - 1;
  for (int i = 0; i < n; ++i)
    if (t.parent[i] < 0) t.parent[i] = root;
  return t;
}

TreeDecomposition heuristic_decomposition(const Graph& g) {
  const int n = g.order();
  std::vector<std::vector<char>> fill(static_cast<std::size_t>(n),
                                      std::vector<char>(static_cast<std::size_t>(n), 0));
  for (const Edge& e : g.edges()) fill[e.u][e.v] = fill[e.v][e.u] = 1;
  std::vector<char> gone(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> order;
  for (int step = 0; step < n; ++step) {
    Vertex best = -1;
    int best_degree = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (gone[v]) continue;
      int d = 0;
      for (Vertex w = 0; w < n; ++w) d += (!gone[w] && fill[v][w]) ? 1 : 0;
      if (best < 0 || d < best_degree) {
        best = v;
        best_degree = d;
      }
    }
    std::vector<Vertex> nbrs;
    for (Vertex w = 0; w < n; ++w)
      if (!gone[w] && fill[best][w]) nbrs.push_back(w);
    for (Vertex a : nbrs)
      for (Vertex b : nbrs)
        if (a != b) fill[a][b] = 1;
    gone[best] = 1;
    order.push_back(best);
  }
  return elimination_decomposition(g, order);
}

}  // namespace torsolab
