#pragma once

#include "torsolab/graph.hpp"

namespace torsolab::generators {

Graph empty(int n);
Graph complete(int n);
Graph path(int n);
Graph cycle(int n);
/// K_{1,leaves}; the center is vertex 0.
Graph star(int leaves);
Graph complete_bipartite(int a, int b);
/// Outer 5-cycle 0..4, spokes i -- i+5, inner pentagram on 5..9.
Graph petersen();
/// Kneser graph K(n, k): k-subsets of {0..n-1} in lexicographic order,
/// adjacent when disjoint.
Graph kneser(int n, int k);
/// Vertices of `b` are shifted up by a.order().
Graph disjoint_union(const Graph& a, const Graph& b);

}  // namespace torsolab::generators
