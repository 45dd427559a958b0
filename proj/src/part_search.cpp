#include "part_search.hpp"

#include <algorithm>

namespace torsolab::detail {

PartSearch::PartSearch(const Graph& g, const TorsoConstraint& c,
                       const DecompositionBudget& budget,
                       const OracleLimits& limits)
    : g_(g), c_(c), budget_(budget), limits_(limits), adj_(masks_of(g)) {}

void PartSearch::tick() {
  if (++steps_ > budget_.max_search_steps) throw SearchExhausted{};
}

bool PartSearch::torso_ok(Mask bag, std::vector<Mask> cliques) {
  if (count(bag) > budget_.max_bag_size) return false;
  std::erase_if(cliques, [](Mask m) { return count(m) < 2; });
  std::sort(cliques.begin(), cliques.end());
  cliques.erase(std::unique(cliques.begin(), cliques.end()), cliques.end());
  cliques.insert(cliques.begin(), bag);
  if (auto it = torso_cache_.find(cliques); it != torso_cache_.end()) {
    return it->second;
  }

  const VertexSet members = to_set(bag);
  std::vector<int> index(static_cast<std::size_t>(g_.order()), -1);
  for (std::size_t i = 0; i < members.size(); ++i) index[members[i]] = static_cast<int>(i);
  Mask extra_rows[64] = {};
  for (std::size_t k = 1; k < cliques.size(); ++k) {
    for (Mask m = cliques[k]; m; m &= m - 1) extra_rows[lowest(m)] |= cliques[k];
  }
  std::vector<Edge> edges;
  for (Vertex u : members) {
    const Mask row = (adj_[u] | extra_rows[u]) & bag & ~bit(u);
    for (Mask m = row & ~((bit(u) << 1) - 1); m; m &= m - 1) {
      edges.emplace_back(index[u], index[lowest(m)]);
    }
  }
  const Graph t(static_cast<int>(members.size()), edges);
  const bool ok = check_torso(t, c_, limits_).ok;
  torso_cache_.emplace(std::move(cliques), ok);
  return ok;
}

bool PartSearch::leaf_ok(Mask part, Mask boundary) {
  return torso_ok(part, {boundary});
}

int PartSearch::max_separator_size(Mask part, Mask boundary) const {
  const int room = budget_.max_bag_size - count(boundary);
  return std::max(0, std::min(room, count(part & ~boundary)));
}

}  // namespace torsolab::detail
