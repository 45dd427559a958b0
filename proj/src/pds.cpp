#include "torsolab/pds.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <cstdint>
#include <map>

namespace torsolab {

namespace {

void validate(const PdsInstance& inst) {
  if (inst.target < 0 || inst.target > inst.graph.order()) {
    throw InputError("target must lie between 0 and the vertex count");
  }
}

constexpr int kInf = INT_MAX / 4;
constexpr std::size_t kMaxBag = 14;

// Per-vertex DP states, one base-3 digit per bag position.
constexpr int kChosen = 0;
constexpr int kDominated = 1;
constexpr int kOpen = 2;

struct Digits {
  std::vector<int> place;
  explicit Digits(std::size_t k) : place(k + 1, 1) {
    for (std::size_t i = 1; i <= k; ++i) place[i] = place[i - 1] * 3;
  }
  int get(int code, std::size_t i) const { return code / place[i] % 3; }
  int set(int code, std::size_t i, int d) const { return code + (d - get(code, i)) * place[i]; }
};

// One table row: bag states, settled count (capped), fewest chosen.
struct Entry {
  int code;
  int settled;
  int chosen;
};

// Keeps the minimum per (code, settled).
class Table {
 public:
  void offer(int code, int settled, int chosen) {
    auto [it, fresh] = best_.try_emplace({code, settled}, chosen);
    if (!fresh) it->second = std::min(it->second, chosen);
  }
  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    out.reserve(best_.size());
    for (const auto& [key, chosen] : best_) out.push_back({key.first, key.second, chosen});
    return out;
  }

 private:
  std::map<std::pair<int, int>, int> best_;
};

class PdsDp {
 public:
  PdsDp(const Graph& g, const TreeDecomposition& t, int target, const std::vector<int>& forced)
      : g_(g), t_(t), target_(target), forced_(forced), kids_(t.children()) {}

  int optimum() {
    const int root = t_.root();
    const VertexSet& bag = t_.bags[root];
    const Digits digits(bag.size());
    int best = kInf;
    for (const Entry& e : solve(root)) {
      int settled = e.settled;
      for (std::size_t i = 0; i < bag.size(); ++i) settled += digits.get(e.code, i) != kOpen;
      if (std::min(settled, target_) >= target_) best = std::min(best, e.chosen);
    }
    return best;
  }

 private:
  std::vector<Entry> solve(int node) {
    const VertexSet& bag = t_.bags[node];
    const std::size_t k = bag.size();
    const Digits digits(k);
    Table table;
    for (std::uint32_t s = 0; s < (1u << k); ++s) {
      bool allowed = true;
      for (std::size_t i = 0; i < k && allowed; ++i) {
        const int f = forced_[bag[i]];
        allowed = f < 0 || f == static_cast<int>((s >> i) & 1u);
      }
      if (!allowed) continue;
      int code = 0;
      for (std::size_t i = 0; i < k; ++i) {
        int state = kOpen;
        if ((s >> i) & 1u) {
          state = kChosen;
        } else {
          for (std::size_t j = 0; j < k && state == kOpen; ++j) {
            if (((s >> j) & 1u) && g_.adjacent(bag[i], bag[j])) state = kDominated;
          }
        }
        code += state * digits.place[i];
      }
      table.offer(code, 0, std::popcount(s));
    }
    std::vector<Entry> current = table.entries();
    for (int child : kids_[node]) {
      const VertexSet adhesion = t_.bags[child].intersected(bag);
      current = join(current, bag, adhesion, project(solve(child), t_.bags[child], adhesion));
    }
    return current;
  }

  // Forgets child-bag vertices outside the adhesion; codes index adhesion
  // positions.
  std::vector<Entry> project(const std::vector<Entry>& child, const VertexSet& child_bag,
                             const VertexSet& adhesion) const {
    const Digits from(child_bag.size());
    const Digits to(adhesion.size());
    std::vector<int> slot(child_bag.size(), -1);
    for (std::size_t i = 0; i < child_bag.size(); ++i) slot[i] = adhesion.index_of(child_bag[i]);
    Table out;
    for (const Entry& e : child) {
      int reduced = 0;
      int settled = e.settled;
      for (std::size_t i = 0; i < child_bag.size(); ++i) {
        const int d = from.get(e.code, i);
        if (slot[i] >= 0) {
          reduced += d * to.place[static_cast<std::size_t>(slot[i])];
        } else if (d != kOpen) {
          ++settled;
        }
      }
      out.offer(reduced, std::min(settled, target_), e.chosen);
    }
    return out.entries();
  }

  std::vector<Entry> join(const std::vector<Entry>& parent, const VertexSet& bag,
                          const VertexSet& adhesion, const std::vector<Entry>& below) const {
    const Digits outer(bag.size());
    const Digits inner(adhesion.size());
    std::vector<std::size_t> place;
    for (Vertex v : adhesion) place.push_back(static_cast<std::size_t>(bag.index_of(v)));
    auto chosen_mask = [&](int code, auto&& get) {
      std::uint32_t m = 0;
      for (std::size_t j = 0; j < place.size(); ++j)
        if (get(code, j) == kChosen) m |= 1u << j;
      return m;
    };
    std::map<std::uint32_t, std::vector<const Entry*>> by_mask;
    for (const Entry& e : below) {
      by_mask[chosen_mask(e.code, [&](int c, std::size_t j) { return inner.get(c, j); })]
          .push_back(&e);
    }
    Table out;
    for (const Entry& p : parent) {
      const std::uint32_t mask =
          chosen_mask(p.code, [&](int c, std::size_t j) { return outer.get(c, place[j]); });
      auto it = by_mask.find(mask);
      if (it == by_mask.end()) continue;
      const int overlap = std::popcount(mask);
      for (const Entry* c : it->second) {
        int code = p.code;
        for (std::size_t j = 0; j < place.size(); ++j) {
          if ((mask >> j) & 1u) continue;
          if (inner.get(c->code, j) == kDominated) code = outer.set(code, place[j], kDominated);
        }
        out.offer(code, std::min(target_, p.settled + c->settled), p.chosen + c->chosen - overlap);
      }
    }
    return out.entries();
  }

  const Graph& g_;
  const TreeDecomposition& t_;
  int target_;
  const std::vector<int>& forced_;
  std::vector<std::vector<int>> kids_;
};

}  // namespace

int dominated_count(const Graph& g, const VertexSet& s) {
  std::vector<char> hit(static_cast<std::size_t>(g.order()), 0);
  for (Vertex v : s) {
    if (v < 0 || v >= g.order()) throw InputError("vertex out of range");
    hit[v] = 1;
    for (Vertex w : g.neighbors(v)) hit[w] = 1;
  }
  return static_cast<int>(std::count(hit.begin(), hit.end(), 1));
}

PdsSolution solve_pds_brute(const PdsInstance& inst, int ceiling) {
  validate(inst);
  const int n = inst.graph.order();
  if (n > ceiling) {
    throw SizeLimitError("brute-force partial domination supports at most " +
                         std::to_string(ceiling) + " vertices");
  }
  for (int k = 0; k <= n; ++k) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      const VertexSet s(std::vector<Vertex>(idx.begin(), idx.end()));
      const int dominated = dominated_count(inst.graph, s);
      if (dominated >= inst.target) return {s, dominated};
      int i = k - 1;
      while (i >= 0 && idx[i] == n - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  throw std::logic_error("choosing every vertex dominates the whole graph");
}

PdsSolution solve_pds_dp(const PdsInstance& inst, const TreeDecomposition& t) {
  validate(inst);
  VerificationReport report = verify_axioms(inst.graph, t);
  if (!report.ok()) throw VerificationError(std::move(report));
  for (const VertexSet& bag : t.bags) {
    if (bag.size() > kMaxBag) {
      throw SizeLimitError("dynamic programming supports bags of at most " +
                           std::to_string(kMaxBag) + " vertices");
    }
  }
  const int n = inst.graph.order();
  std::vector<int> forced(static_cast<std::size_t>(n), -1);
  const int best = PdsDp(inst.graph, t, inst.target, forced).optimum();
  // Lexicographically least optimum: take each vertex whenever an optimum
  // survives the choice.
  std::vector<Vertex> chosen;
  for (Vertex v = 0; v < n && static_cast<int>(chosen.size()) < best; ++v) {
    forced[v] = 1;
    if (PdsDp(inst.graph, t, inst.target, forced).optimum() == best) {
      chosen.push_back(v);
    } else {
      forced[v] = 0;
    }
  }
  const VertexSet s(std::move(chosen));
  return {s, dominated_count(inst.graph, s)};
}

}  // namespace torsolab
