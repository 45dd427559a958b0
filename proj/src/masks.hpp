#pragma once

// Bitmask helpers for the exact searches (graphs with at most 64 vertices).

#include <bit>
#include <cstdint>
#include <vector>

#include "torsolab/graph.hpp"

namespace torsolab::detail {

using Mask = std::uint64_t;

constexpr Mask bit(int v) { return Mask{1} << v; }
inline int lowest(Mask m) { return std::countr_zero(m); }
inline int count(Mask m) { return std::popcount(m); }
inline Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : bit(n) - 1; }

inline std::vector<Mask> masks_of(const Graph& g) {
  std::vector<Mask> adj(static_cast<std::size_t>(g.order()), 0);
  for (Vertex v = 0; v < g.order(); ++v)
    for (Vertex w : g.neighbors(v)) adj[v] |= bit(w);
  return adj;
}

inline Mask neighbors_of(const std::vector<Mask>& adj, Mask s) {
  Mask out = 0;
  for (Mask m = s; m; m &= m - 1) out |= adj[lowest(m)];
  return out & ~s;
}

/// Vertices of `within` reachable from `from` inside `within`.
inline Mask reach(const std::vector<Mask>& adj, Mask from, Mask within) {
  Mask seen = from & within;
  Mask frontier = seen;
  while (frontier) {
    const Mask next = neighbors_of(adj, frontier) & within & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

inline bool connected_mask(const std::vector<Mask>& adj, Mask s) {
  return s == 0 || reach(adj, bit(lowest(s)), s) == s;
}

/// Components of G[within], ordered by least member.
inline std::vector<Mask> component_masks(const std::vector<Mask>& adj, Mask within) {
  std::vector<Mask> out;
  for (Mask todo = within; todo;) {
    const Mask comp = reach(adj, bit(lowest(todo)), within);
    out.push_back(comp);
    todo &= ~comp;
  }
  return out;
}

inline VertexSet to_set(Mask m) {
  std::vector<Vertex> out;
  for (; m; m &= m - 1) out.push_back(lowest(m));
  return VertexSet(std::move(out));
}

inline Mask to_mask(const VertexSet& s) {
  Mask m = 0;
  for (Vertex v : s) m |= bit(v);
  return m;
}

/// Calls visit(subset) for every size-k subset of `pool` in lexicographic
/// order of sorted member lists; stops early when visit returns true.
template <typename Visit>
bool for_each_subset(Mask pool, int k, Visit&& visit) {
  std::vector<int> members;
  for (Mask m = pool; m; m &= m - 1) members.push_back(lowest(m));
  const int n = static_cast<int>(members.size());
  if (k > n || k < 0) return false;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    Mask s = 0;
    for (int i : idx) s |= bit(members[i]);
    if (visit(s)) return true;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace torsolab::detail
