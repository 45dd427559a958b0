#pragma once

#include <string>
#include <vector>

#include "torsolab/decomposition.hpp"
#include "torsolab/treelike.hpp"

namespace torsolab {

/// colors[v] >= 0; an empty vector means every vertex has color 0.
struct ColoredGraph {
  Graph graph;
  std::vector<int> colors;

  int color(Vertex v) const { return colors.empty() ? 0 : colors[v]; }
};

/// witness[v] is the canonical label of input vertex v.
struct CanonicalForm {
  std::string certificate;
  Permutation witness;
};

inline constexpr int kExhaustiveCeiling = 10;

/// Big-endian uint32 n, n big-endian uint32 colors, then the upper
/// triangle of the adjacency matrix row by row, packed MSB first. Empty
/// for n = 0.
std::string serialize(const ColoredGraph& cg);

/// Stable color refinement. Class ids are dense ranks that refine the
/// order of the input colors.
std::vector<int> refine_colors(const ColoredGraph& cg);

/// Least serialization over the labelings that list the refined classes in
/// order. Enumerates every such labeling; throws SizeLimitError above
/// `ceiling` vertices.
CanonicalForm canonise_small(const ColoredGraph& cg, int ceiling = kExhaustiveCeiling);

/// Same function as canonise_small, computed by individualization with
/// branch and bound, twin and automorphism pruning.
CanonicalForm canonise_refined(const ColoredGraph& cg);

/// canonise_small up to the exhaustive ceiling, canonise_refined above it.
/// The constraint does not change how a torso is canonised.
CanonicalForm canonise_torso(const Graph& torso, const std::vector<int>& colors,
                             const TorsoConstraint& c);

/// Canonical form assembled bottom-up along the parts of d. The
/// certificate is serialize(relabel(g, witness)) with every color 0.
/// Throws VerificationError when d fails verify_treelike for the trivial
/// constraint or, with check_invariance, verify_invariance.
CanonicalForm lift_canonisation(const Graph& g, const TreelikeDecomposition& d,
                                const TorsoConstraint& c, const OracleLimits& limits = {},
                                bool check_invariance = true);

/// lift_canonisation over invariant_decompose(g, c).
CanonicalForm canonical_form(const Graph& g, const TorsoConstraint& c = {},
                             const DecompositionBudget& budget = {},
                             const OracleLimits& limits = {});

bool isomorphic(const Graph& g, const Graph& h, const TorsoConstraint& c = {},
                const DecompositionBudget& budget = {}, const OracleLimits& limits = {});

std::string to_hex(const std::string& bytes);

}  // namespace torsolab
