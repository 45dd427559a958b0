#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "torsolab/decomposition.hpp"

namespace torsolab {

/// kLeaf: bag == part. kJoin: empty bag over a disconnected part.
enum class NodeRole { kLeaf, kSplit, kJoin };

std::string_view to_string(NodeRole role);

/// A DAG node describes how its part (P, B) is split: the bag X satisfies
/// B ⊆ X ⊆ P, and each child part (P', B') has B' = P' ∩ X. Nodes are
/// identified by content; several nodes may share a part, one per choice
/// of bag.
struct TreelikeNode {
  VertexSet bag;
  VertexSet part;
  VertexSet boundary;
  NodeRole role = NodeRole::kLeaf;

  friend bool operator==(const TreelikeNode&, const TreelikeNode&) = default;
};

/// Nodes sorted by (|bag|, bag, part, boundary); arcs and roots sorted.
struct TreelikeDecomposition {
  std::vector<TreelikeNode> nodes;
  std::vector<std::pair<int, int>> arcs;
  std::vector<int> roots;

  std::size_t size() const { return nodes.size(); }
  std::vector<std::vector<int>> children() const;

  friend bool operator==(const TreelikeDecomposition&,
                         const TreelikeDecomposition&) = default;
};

NodeRole role_of(const VertexSet& bag, const VertexSet& part);

/// Brings nodes, arcs and roots into the sorted normal form, merging
/// duplicate nodes. Roots are recomputed as the nodes without parents.
TreelikeDecomposition normalized(const std::vector<TreelikeNode>& nodes,
                                 const std::vector<std::pair<int, int>>& arcs);

/// Keeps every minimum-size admissible split of every part instead of the
/// lexicographically least one, so the result is fixed by Aut(g).
/// Throws DecompositionNotFound like decompose, and ResourceError when the
/// DAG outgrows budget.max_dag_nodes.
TreelikeDecomposition invariant_decompose(const Graph& g,
                                          const TorsoConstraint& c,
                                          const DecompositionBudget& budget = {},
                                          const OracleLimits& limits = {});

/// Each node as a part of a tree decomposition: part = union of the bags
/// below it, boundary = adhesion. Throws VerificationError on invalid t.
TreelikeDecomposition from_tree_decomposition(const Graph& g,
                                              const TreeDecomposition& t);

/// G[bag] plus cliques on the boundary and on the boundary of every child
/// part. Vertex i of the result is bag[i].
Graph torso(const Graph& g, const TreelikeDecomposition& d, int node);

/// Shape and acyclicity (malformed), coverage, edge coverage, the local
/// part conditions (connectivity) and, per node, the torso constraint.
/// The local conditions make every choice of one node per part a tree
/// decomposition of g.
VerificationReport verify_treelike(const Graph& g,
                                   const TreelikeDecomposition& d,
                                   const TorsoConstraint& c,
                                   const OracleLimits& limits = {});

/// Every automorphism of g must map nodes and arcs onto themselves. Reports
/// the first offending node; unverifiable above limits.host_ceiling or
/// limits.max_automorphisms.
VerificationReport verify_invariance(const Graph& g,
                                     const TreelikeDecomposition& d,
                                     const OracleLimits& limits = {});

}  // namespace torsolab
