#pragma once

#include "torsolab/decomposition.hpp"

namespace torsolab {

/// Choose as few vertices as possible so that at least `target` vertices
/// lie in their closed neighborhood. 0 <= target <= n.
struct PdsInstance {
  Graph graph;
  int target = 0;
};

struct PdsSolution {
  VertexSet chosen;
  int dominated = 0;  // |chosen ∪ N(chosen)|

  friend bool operator==(const PdsSolution&, const PdsSolution&) = default;
};

inline constexpr int kPdsBruteCeiling = 16;

/// |s ∪ N(s)|.
int dominated_count(const Graph& g, const VertexSet& s);

/// Subsets by size, each size in lexicographic order; the first hit is the
/// lexicographically least optimum.
PdsSolution solve_pds_brute(const PdsInstance& inst, int ceiling = kPdsBruteCeiling);

/// Dynamic programming over t with per-vertex states chosen / dominated /
/// undominated and a count of settled dominated vertices capped at the
/// target. Returns the same solution as solve_pds_brute. Throws
/// VerificationError when t is not a tree decomposition of the graph.
PdsSolution solve_pds_dp(const PdsInstance& inst, const TreeDecomposition& t);

}  // namespace torsolab
