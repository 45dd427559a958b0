#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace torsolab {

using Vertex = int;

/// Unordered vertex pair, always stored with first < second.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Sorted, duplicate-free set of vertex labels. Used for bags, separators,
/// apex sets, dominating sets and branch sets.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> members);
  explicit VertexSet(std::vector<Vertex> members);

  static VertexSet range(Vertex count);

  bool contains(Vertex v) const;
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  Vertex operator[](std::size_t i) const { return members_[i]; }
  const std::vector<Vertex>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  /// Position of `v` inside the sorted member list, or -1.
  int index_of(Vertex v) const;

  void insert(Vertex v);
  void erase(Vertex v);

  bool is_subset_of(const VertexSet& other) const;
  VertexSet united(const VertexSet& other) const;
  VertexSet intersected(const VertexSet& other) const;
  VertexSet without(const VertexSet& other) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> members_;
};

/// Simple undirected graph on vertices 0..n-1. Immutable once built;
/// neighbor lists are sorted ascending.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  /// Throws InputError on self-loops, out-of-range endpoints or repeated edges.
  Graph(int n, std::span<const Edge> edges);
  Graph(int n, std::initializer_list<Edge> edges)
      : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  int order() const { return static_cast<int>(adjacency_.size()); }
  std::size_t size() const { return edge_count_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }
  bool adjacent(Vertex u, Vertex v) const;

  /// All edges, sorted lexicographically.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// Result of induced_subgraph: the subgraph plus old-label -> new-label map
/// (-1 for vertices outside the set).
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> mapping;
};

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s);

/// Merges the endpoints of `e` into min(u, v); labels above max(u, v) shift
/// down by one.
Graph contract_edge(const Graph& g, Edge e);

/// Relabels by `perm` (perm[old] = new). perm must be a permutation of 0..n-1.
Graph relabel(const Graph& g, std::span<const Vertex> perm);

Graph add_clique(const Graph& g, const VertexSet& s);

/// Connected components of g restricted to `allowed` (all vertices when
/// empty optional), each sorted; components ordered by least member.
std::vector<VertexSet> components(const Graph& g, const VertexSet& allowed);
std::vector<VertexSet> components(const Graph& g);

bool is_connected(const Graph& g);

/// Open neighborhood of a set, excluding the set itself.
VertexSet neighborhood(const Graph& g, const VertexSet& s);

}  // namespace torsolab
