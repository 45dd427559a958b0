#pragma once

// Separator search over "parts" (P, B): P is a vertex set of the host, B ⊆ P
// its boundary towards the parent bag. A split of a part picks a bag
// X = B ∪ S for a balanced separator S ⊆ P − B; every component C of
// G[P − X] becomes the child part (C ∪ N(C), N(C)).

#include <map>
#include <utility>
#include <vector>

#include "masks.hpp"
#include "torsolab/decomposition.hpp"

namespace torsolab::detail {

struct Split {
  Mask bag = 0;
  std::vector<std::pair<Mask, Mask>> children;  // (part, boundary)
};

struct SearchExhausted {};

class PartSearch {
 public:
  PartSearch(const Graph& g, const TorsoConstraint& c,
             const DecompositionBudget& budget, const OracleLimits& limits);

  const std::vector<Mask>& adj() const { return adj_; }
  Mask all() const { return full_mask(g_.order()); }

  /// G[bag] plus a clique on each listed set must satisfy the constraint.
  bool torso_ok(Mask bag, std::vector<Mask> cliques);

  bool leaf_ok(Mask part, Mask boundary);

  /// Largest separator size worth trying for this part.
  int max_separator_size(Mask part, Mask boundary) const;

  /// Visits the admissible splits using separators of exactly `size`
  /// vertices, in lexicographic order; stops when visit returns true.
  template <typename Visit>
  bool for_each_split(Mask part, Mask boundary, int size, Visit&& visit);

  void tick();

 private:
  const Graph& g_;
  const TorsoConstraint& c_;
  const DecompositionBudget& budget_;
  const OracleLimits& limits_;
  std::vector<Mask> adj_;
  std::map<std::vector<Mask>, bool> torso_cache_;
  std::size_t steps_ = 0;
};

template <typename Visit>
bool PartSearch::for_each_split(Mask part, Mask boundary, int size,
                                Visit&& visit) {
  const int bound = count(part) / 2;
  return for_each_subset(part & ~boundary, size, [&](Mask sep) {
    tick();
    const Mask bag = boundary | sep;
    Split split{bag, {}};
    std::vector<Mask> cliques{boundary};
    for (Mask comp : component_masks(adj_, part & ~bag)) {
      if (count(comp) > bound) return false;
      const Mask attach = neighbors_of(adj_, comp) & bag;
      if (count(attach) > budget_.max_adhesion) return false;
      const Mask child = comp | attach;
      if (child == part && attach == boundary) return false;
      split.children.emplace_back(child, attach);
      cliques.push_back(attach);
    }
    if (!torso_ok(bag, std::move(cliques))) return false;
    return visit(split);
  });
}

}  // namespace torsolab::detail
