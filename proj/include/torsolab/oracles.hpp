#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "torsolab/graph.hpp"

namespace torsolab {

/// The excluded pattern H. Same representation and invariants as Graph.
using PatternGraph = Graph;

/// Bounds for the exact exponential searches. Exceeding a ceiling raises
/// SizeLimitError; nothing is ever silently truncated.
struct OracleLimits {
  int host_ceiling = 16;
  int pattern_ceiling = 8;
  std::size_t max_automorphisms = 1'000'000;

  /// Defaults, overridden by TORSOLAB_CEILING=<host>[,<pattern>].
  static OracleLimits from_environment();
};

/// One connected, pairwise-disjoint branch set per pattern vertex.
struct MinorModel {
  std::vector<VertexSet> branch_sets;
};

/// Branch vertex per pattern vertex and one host path per pattern edge
/// (paths[i] realises pattern_edges[i], endpoints included).
struct TopologicalModel {
  std::vector<Vertex> branch_vertices;
  std::vector<Edge> pattern_edges;
  std::vector<std::vector<Vertex>> paths;
};

/// A permutation stored as image[v].
using Permutation = std::vector<Vertex>;

std::optional<MinorModel> find_minor(const PatternGraph& pattern,
                                     const Graph& host,
                                     const OracleLimits& limits = {});

std::optional<TopologicalModel> find_topological_subgraph(
    const PatternGraph& pattern, const Graph& host,
    const OracleLimits& limits = {});

/// First adjacency-preserving bijection g -> h in lexicographic order.
std::optional<Permutation> is_isomorphic_brute(const Graph& g, const Graph& h,
                                               const OracleLimits& limits = {});

/// All automorphisms, sorted lexicographically; the identity comes first.
std::vector<Permutation> automorphisms(const Graph& g,
                                       const OracleLimits& limits = {});

// Witness checkers, independent of the searches above.
bool is_minor_model(const PatternGraph& pattern, const Graph& host,
                    const MinorModel& model);
bool is_topological_model(const PatternGraph& pattern, const Graph& host,
                          const TopologicalModel& model);
bool is_isomorphism(const Graph& g, const Graph& h, const Permutation& map);

/// Every subdivision model contracts to a minor model: each path interior is
/// merged into the branch set of its lower pattern endpoint.
MinorModel minor_model_from(const TopologicalModel& model);

}  // namespace torsolab
