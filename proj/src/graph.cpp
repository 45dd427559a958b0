#include "torsolab/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "torsolab/errors.hpp"

namespace torsolab {

VertexSet::VertexSet(std::initializer_list<Vertex> members)
    : VertexSet(std::vector<Vertex>(members)) {}

VertexSet::VertexSet(std::vector<Vertex> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

VertexSet VertexSet::range(Vertex count) {
  std::vector<Vertex> all(static_cast<std::size_t>(std::max(count, 0)));
  std::iota(all.begin(), all.end(), 0);
  return VertexSet(std::move(all));
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

int VertexSet::index_of(Vertex v) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), v);
  if (it == members_.end() || *it != v) return -1;
  return static_cast<int>(it - members_.begin());
}

void VertexSet::insert(Vertex v) {
  auto it = std::lower_bound(members_.begin(), members_.end(), v);
  if (it == members_.end() || *it != v) members_.insert(it, v);
}

void VertexSet::erase(Vertex v) {
  auto it = std::lower_bound(members_.begin(), members_.end(), v);
  if (it != members_.end() && *it == v) members_.erase(it);
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end());
}

VertexSet VertexSet::united(const VertexSet& other) const {
  VertexSet out;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(),
                 other.members_.end(), std::back_inserter(out.members_));
  return out;
}

VertexSet VertexSet::intersected(const VertexSet& other) const {
  VertexSet out;
  std::set_intersection(members_.begin(), members_.end(),
                        other.members_.begin(), other.members_.end(),
                        std::back_inserter(out.members_));
  return out;
}

VertexSet VertexSet::without(const VertexSet& other) const {
  VertexSet out;
  std::set_difference(members_.begin(), members_.end(), other.members_.begin(),
                      other.members_.end(), std::back_inserter(out.members_));
  return out;
}

Graph::Graph(int n) {
  if (n < 0) throw InputError("negative vertex count");
  adjacency_.resize(static_cast<std::size_t>(n));
}

Graph::Graph(int n, std::span<const Edge> edges) : Graph(n) {
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v >= n) {
      throw InputError("edge {" + std::to_string(e.u) + "," +
                       std::to_string(e.v) + "} out of range for n=" +
                       std::to_string(n));
    }
    if (e.u == e.v) {
      throw InputError("self-loop at vertex " + std::to_string(e.u));
    }
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& row : adjacency_) {
    std::sort(row.begin(), row.end());
    if (std::adjacent_find(row.begin(), row.end()) != row.end()) {
      const auto u = static_cast<int>(&row - adjacency_.data());
      const auto v = *std::adjacent_find(row.begin(), row.end());
      throw InputError("repeated edge {" + std::to_string(std::min(u, v)) +
                       "," + std::to_string(std::max(u, v)) + "}");
    }
  }
  edge_count_ = edges.size();
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  const auto& row = adjacency_[u];
  return std::binary_search(row.begin(), row.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < order(); ++u) {
    for (Vertex v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s) {
  for (Vertex v : s) {
    if (v < 0 || v >= g.order()) {
      throw InputError("vertex " + std::to_string(v) +
                       " out of range for n=" + std::to_string(g.order()));
    }
  }
  std::vector<Vertex> mapping(static_cast<std::size_t>(g.order()), -1);
  for (std::size_t i = 0; i < s.size(); ++i) mapping[s[i]] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (Vertex u : s) {
    for (Vertex v : g.neighbors(u)) {
      if (u < v && mapping[v] >= 0) edges.emplace_back(mapping[u], mapping[v]);
    }
  }
  return {Graph(static_cast<int>(s.size()), edges), std::move(mapping)};
}

Graph contract_edge(const Graph& g, Edge e) {
  if (e.u < 0 || e.v >= g.order() || e.u == e.v || !g.adjacent(e.u, e.v)) {
    throw InputError("{" + std::to_string(e.u) + "," + std::to_string(e.v) +
                     "} is not an edge");
  }
  auto image = [&](Vertex x) {
    if (x == e.v) return e.u;
    return x > e.v ? x - 1 : x;
  };
  std::vector<Edge> edges;
  for (const Edge& f : g.edges()) {
    const Vertex a = image(f.u);
    const Vertex b = image(f.v);
    if (a != b) edges.emplace_back(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph(g.order() - 1, edges);
}

Graph relabel(const Graph& g, std::span<const Vertex> perm) {
  if (static_cast<int>(perm.size()) != g.order()) {
    throw InputError("permutation length does not match vertex count");
  }
  std::vector<bool> seen(perm.size(), false);
  for (Vertex p : perm) {
    if (p < 0 || p >= g.order() || seen[p]) throw InputError("not a permutation");
    seen[p] = true;
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) edges.emplace_back(perm[e.u], perm[e.v]);
  return Graph(g.order(), edges);
}

Graph add_clique(const Graph& g, const VertexSet& s) {
  std::vector<Edge> edges = g.edges();
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (!g.adjacent(s[i], s[j])) edges.emplace_back(s[i], s[j]);
    }
  }
  return Graph(g.order(), edges);
}

std::vector<VertexSet> components(const Graph& g, const VertexSet& allowed) {
  std::vector<char> inside(static_cast<std::size_t>(g.order()), 0);
  for (Vertex v : allowed) inside[v] = 1;
  std::vector<char> seen(inside.size(), 0);
  std::vector<VertexSet> out;
  std::vector<Vertex> stack;
  for (Vertex root : allowed) {
    if (seen[root]) continue;
    std::vector<Vertex> members;
    seen[root] = 1;
    stack.push_back(root);
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      members.push_back(u);
      for (Vertex w : g.neighbors(u)) {
        if (inside[w] && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    out.emplace_back(std::move(members));
  }
  return out;
}

std::vector<VertexSet> components(const Graph& g) {
  return components(g, VertexSet::range(g.order()));
}

bool is_connected(const Graph& g) { return components(g).size() <= 1; }

VertexSet neighborhood(const Graph& g, const VertexSet& s) {
  std::vector<Vertex> out;
  for (Vertex u : s) {
    for (Vertex w : g.neighbors(u)) {
      if (!s.contains(w)) out.push_back(w);
    }
  }
  return VertexSet(std::move(out));
}

}  // namespace torsolab
