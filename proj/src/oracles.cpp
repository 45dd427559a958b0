#include "torsolab/oracles.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "masks.hpp"
#include "torsolab/errors.hpp"

namespace torsolab {
namespace {

using namespace detail;

void guard(const Graph& host, const OracleLimits& limits, const char* what) {
  if (host.order() > limits.host_ceiling || host.order() > 64) {
    throw SizeLimitError(std::string(what) + ": host has " +
                         std::to_string(host.order()) +
                         " vertices, ceiling is " +
                         std::to_string(std::min(limits.host_ceiling, 64)));
  }
}

void guard_pattern(const Graph& pattern, const OracleLimits& limits,
                   const char* what) {
  if (pattern.order() > limits.pattern_ceiling || pattern.order() > 64) {
    throw SizeLimitError(std::string(what) + ": pattern has " +
                         std::to_string(pattern.order()) +
                         " vertices, ceiling is " +
                         std::to_string(std::min(limits.pattern_ceiling, 64)));
  }
}

// twin_prev[p]: the largest q < p with N(p) \ {q} == N(q) \ {p}, or -1.
// The transposition (p q) is then a pattern automorphism.
std::vector<int> twin_predecessors(const Graph& pattern) {
  const auto adj = masks_of(pattern);
  std::vector<int> prev(static_cast<std::size_t>(pattern.order()), -1);
  for (int p = 0; p < pattern.order(); ++p) {
    for (int q = p - 1; q >= 0; --q) {
      if ((adj[p] & ~bit(q)) == (adj[q] & ~bit(p))) {
        prev[p] = q;
        break;
      }
    }
  }
  return prev;
}

class MinorSearch {
 public:
  MinorSearch(const Graph& pattern, const Graph& host)
      : pattern_(pattern),
        k_(pattern.order()),
        adj_(masks_of(host)),
        full_(full_mask(host.order())),
        twin_prev_(twin_predecessors(pattern)),
        branch_(static_cast<std::size_t>(k_), 0) {}

  std::optional<MinorModel> run() {
    if (!place(0, 0)) return std::nullopt;
    MinorModel model;
    for (Mask m : branch_) model.branch_sets.push_back(to_set(m));
    return model;
  }

 private:
  int future_neighbors(int p, int placed) const {
    int c = 0;
    for (Vertex q : pattern_.neighbors(p)) c += q >= placed ? 1 : 0;
    return c;
  }

  // Every non-cut vertex of a minimal branch set is the only contact with
  // some neighboring branch set, so their number is at most deg(p).
  bool shape_ok(int p, Mask s) const {
    if (count(s) < 2) return true;
    int non_cut = 0;
    int limit = pattern_.degree(p);
    for (Mask m = s; m; m &= m - 1) {
      const Mask rest = s & ~bit(lowest(m));
      if (connected_mask(adj_, rest)) {
        if (++non_cut > limit) return false;
      }
    }
    return true;
  }

  bool feasible(int placed, Mask used) const {
    const Mask rest = full_ & ~used;
    if (count(rest) < k_ - placed) return false;
    for (int j = 0; j < placed; ++j) {
      const int need = future_neighbors(j, placed);
      if (need > 0 && count(neighbors_of(adj_, branch_[j]) & rest) < need)
        return false;
    }
    for (int q = placed; q < k_; ++q) {
      bool any = false;
      Mask todo = rest;
      while (todo && !any) {
        const Mask comp = reach(adj_, bit(lowest(todo)), rest);
        todo &= ~comp;
        const Mask touch = neighbors_of(adj_, comp);
        bool ok = true;
        for (Vertex j : pattern_.neighbors(q)) {
          if (j < placed && (touch & branch_[j]) == 0) {
            ok = false;
            break;
          }
        }
        any = ok;
      }
      if (!any) return false;
    }
    return true;
  }

  bool place(int p, Mask used) {
    if (p == k_) return true;
    const Mask avail = full_ & ~used;
    const int room = count(avail) - (k_ - p - 1);
    int min_root = 0;
    if (twin_prev_[p] >= 0) min_root = lowest(branch_[twin_prev_[p]]) + 1;
    for (Mask roots = avail; roots; roots &= roots - 1) {
      const int r = lowest(roots);
      if (r < min_root) continue;
      const Mask allowed = avail & ~(bit(r + 1) - 1);
      if (grow(p, used, bit(r), adj_[r] & allowed, 0, allowed, room)) return true;
    }
    return false;
  }

  bool consider(int p, Mask used, Mask s) {
    for (Vertex j : pattern_.neighbors(p)) {
      if (j < p && (neighbors_of(adj_, branch_[j]) & s) == 0) return false;
    }
    if (!shape_ok(p, s)) return false;
    branch_[p] = s;
    if (feasible(p + 1, used | s) && place(p + 1, used | s)) return true;
    branch_[p] = 0;
    return false;
  }

  // Enumerates each connected set containing the root exactly once: the
  // vertices already tried at a level are forbidden below it.
  bool grow(int p, Mask used, Mask s, Mask ext, Mask forbidden, Mask allowed,
            int room) {
    if (consider(p, used, s)) return true;
    if (count(s) >= room) return false;
    Mask tried = 0;
    for (Mask e = ext; e; e &= e - 1) {
      const int v = lowest(e);
      const Mask forb = forbidden | tried;
      const Mask next_ext =
          (ext | (adj_[v] & allowed)) & ~s & ~bit(v) & ~forb;
      if (grow(p, used, s | bit(v), next_ext, forb, allowed, room)) return true;
      tried |= bit(v);
    }
    return false;
  }

  const Graph& pattern_;
  int k_;
  std::vector<Mask> adj_;
  Mask full_;
  std::vector<int> twin_prev_;
  std::vector<Mask> branch_;
};

class TopologicalSearch {
 public:
  TopologicalSearch(const Graph& pattern, const Graph& host)
      : pattern_(pattern),
        k_(pattern.order()),
        adj_(masks_of(host)),
        full_(full_mask(host.order())),
        twin_prev_(twin_predecessors(pattern)),
        image_(static_cast<std::size_t>(k_), -1) {}

  std::optional<TopologicalModel> run() {
    if (!assign(0, 0, 0)) return std::nullopt;
    TopologicalModel model;
    model.branch_vertices = image_;
    for (auto& [e, path] : routed_) {
      model.pattern_edges.push_back(e);
      model.paths.push_back(path);
    }
    // routed in assignment order; report sorted by pattern edge
    std::vector<std::size_t> idx(model.paths.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return model.pattern_edges[a] < model.pattern_edges[b];
    });
    TopologicalModel sorted;
    sorted.branch_vertices = model.branch_vertices;
    for (std::size_t i : idx) {
      sorted.pattern_edges.push_back(model.pattern_edges[i]);
      sorted.paths.push_back(model.paths[i]);
    }
    return sorted;
  }

 private:
  // branches: host vertices used as branch vertices; inner: path interiors.
  bool assign(int p, Mask branches, Mask inner) {
    if (p == k_) return true;
    const int need = pattern_.degree(p);
    int min_host = 0;
    if (twin_prev_[p] >= 0) min_host = image_[twin_prev_[p]] + 1;
    for (Mask cand = full_ & ~branches & ~inner; cand; cand &= cand - 1) {
      const int x = lowest(cand);
      if (x < min_host) continue;
      if (count(adj_[x] & ~inner) < need) continue;
      image_[p] = x;
      std::vector<Vertex> pending;
      for (Vertex q : pattern_.neighbors(p))
        if (q < p) pending.push_back(q);
      if (route(p, 0, branches | bit(x), inner, pending)) return true;
    }
    image_[p] = -1;
    return false;
  }

  bool reachable(int s, int t, Mask free) const {
    if (adj_[s] & bit(t)) return true;
    const Mask seen = reach(adj_, adj_[s] & free, free);
    return (neighbors_of(adj_, seen) & bit(t)) != 0;
  }

  bool still_feasible(int placed, Mask branches, Mask inner) const {
    const Mask free = full_ & ~branches & ~inner;
    for (int a = 0; a < placed; ++a) {
      for (Vertex b : pattern_.neighbors(a)) {
        if (b > a && b < placed && !is_routed(a, b) &&
            !reachable(image_[a], image_[b], free))
          return false;
      }
    }
    return true;
  }

  bool is_routed(int a, int b) const {
    const Edge e(a, b);
    for (const auto& r : routed_)
      if (r.first == e) return true;
    return false;
  }

  bool route(int p, std::size_t i, Mask branches, Mask inner,
             const std::vector<Vertex>& pending) {
    if (i == pending.size()) return assign(p + 1, branches, inner);
    const int s = image_[pending[i]];
    const int t = image_[p];
    std::vector<Vertex> path{s};
    return extend(p, i, branches, inner, pending, path, bit(s), t);
  }

  // Only chordless paths: any chord would give a shortcut with a smaller
  // interior, which is also a valid routing.
  bool extend(int p, std::size_t i, Mask branches, Mask inner,
              const std::vector<Vertex>& pending, std::vector<Vertex>& path,
              Mask on_path, int t) {
    const int x = path.back();
    if (adj_[x] & bit(t)) {
      path.push_back(t);
      routed_.emplace_back(Edge(pending[i], p), path);
      const Mask interior = on_path & ~bit(path.front());
      const Mask next_inner = inner | interior;
      if (still_feasible(p + 1, branches, next_inner) &&
          route(p, i + 1, branches, next_inner, pending))
        return true;
      routed_.pop_back();
      path.pop_back();
      return false;
    }
    const Mask free = full_ & ~branches & ~inner & ~on_path;
    for (Mask cand = adj_[x] & free; cand; cand &= cand - 1) {
      const int y = lowest(cand);
      if (adj_[y] & on_path & ~bit(x)) continue;
      path.push_back(y);
      if (extend(p, i, branches, inner, pending, path, on_path | bit(y), t))
        return true;
      path.pop_back();
    }
    return false;
  }

  const Graph& pattern_;
  int k_;
  std::vector<Mask> adj_;
  Mask full_;
  std::vector<int> twin_prev_;
  std::vector<Vertex> image_;
  std::vector<std::pair<Edge, std::vector<Vertex>>> routed_;
};

// Lexicographic backtracking over bijections g -> h. `visit` returns false
// to stop the enumeration.
template <typename Visit>
void for_each_isomorphism(const Graph& g, const Graph& h, Visit&& visit) {
  const int n = g.order();
  if (n != h.order() || g.size() != h.size()) return;
  const auto ga = masks_of(g);
  const auto ha = masks_of(h);
  Permutation map(static_cast<std::size_t>(n), -1);
  Mask used = 0;
  bool stop = false;
  auto rec = [&](auto&& self, int i) -> void {
    if (stop) return;
    if (i == n) {
      if (!visit(map)) stop = true;
      return;
    }
    for (int y = 0; y < n && !stop; ++y) {
      if (used & bit(y)) continue;
      if (g.degree(i) != h.degree(y)) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) {
        ok = ((ga[i] >> j) & 1u) == ((ha[y] >> map[j]) & 1u);
      }
      if (!ok) continue;
      map[i] = y;
      used |= bit(y);
      self(self, i + 1);
      used &= ~bit(y);
      map[i] = -1;
    }
  };
  rec(rec, 0);
}

}  // namespace

OracleLimits OracleLimits::from_environment() {
  OracleLimits limits;
  if (const char* env = std::getenv("TORSOLAB_CEILING")) {
    const std::string text(env);
    const auto comma = text.find(',');
    try {
      limits.host_ceiling = std::stoi(text.substr(0, comma));
      if (comma != std::string::npos)
        limits.pattern_ceiling = std::stoi(text.substr(comma + 1));
    } catch (const std::exception&) {
      throw InputError("TORSOLAB_CEILING must be <host>[,<pattern>]");
    }
  }
  return limits;
}

std::optional<MinorModel> find_minor(const PatternGraph& pattern,
                                     const Graph& host,
                                     const OracleLimits& limits) {
  guard(host, limits, "find_minor");
  guard_pattern(pattern, limits, "find_minor");
  if (pattern.order() > host.order() || pattern.size() > host.size())
    return std::nullopt;
  return MinorSearch(pattern, host).run();
}

std::optional<TopologicalModel> find_topological_subgraph(
    const PatternGraph& pattern, const Graph& host,
    const OracleLimits& limits) {
  guard(host, limits, "find_topological_subgraph");
  guard_pattern(pattern, limits, "find_topological_subgraph");
  if (pattern.order() > host.order() || pattern.size() > host.size())
    return std::nullopt;
  return TopologicalSearch(pattern, host).run();
}

std::optional<Permutation> is_isomorphic_brute(const Graph& g, const Graph& h,
                                               const OracleLimits& limits) {
  guard(g, limits, "is_isomorphic_brute");
  guard(h, limits, "is_isomorphic_brute");
  std::optional<Permutation> found;
  for_each_isomorphism(g, h, [&](const Permutation& map) {
    found = map;
    return false;
  });
  return found;
}

std::vector<Permutation> automorphisms(const Graph& g,
                                       const OracleLimits& limits) {
  guard(g, limits, "automorphisms");
  std::vector<Permutation> out;
  bool overflow = false;
  for_each_isomorphism(g, g, [&](const Permutation& map) {
    if (out.size() >= limits.max_automorphisms) {
      overflow = true;
      return false;
    }
    out.push_back(map);
    return true;
  });
  if (overflow) {
    throw ResourceError("automorphism group larger than " +
                        std::to_string(limits.max_automorphisms));
  }
  return out;
}

bool is_minor_model(const PatternGraph& pattern, const Graph& host,
                    const MinorModel& model) {
  if (static_cast<int>(model.branch_sets.size()) != pattern.order()) return false;
  std::vector<int> owner(static_cast<std::size_t>(host.order()), -1);
  for (std::size_t i = 0; i < model.branch_sets.size(); ++i) {
    const VertexSet& b = model.branch_sets[i];
    if (b.empty()) return false;
    for (Vertex v : b) {
      if (v < 0 || v >= host.order() || owner[v] != -1) return false;
      owner[v] = static_cast<int>(i);
    }
    if (components(host, b).size() != 1) return false;
  }
  for (const Edge& e : pattern.edges()) {
    bool joined = false;
    for (Vertex v : model.branch_sets[e.u]) {
      for (Vertex w : host.neighbors(v)) joined = joined || owner[w] == e.v;
    }
    if (!joined) return false;
  }
  return true;
}

bool is_topological_model(const PatternGraph& pattern, const Graph& host,
                          const TopologicalModel& model) {
  const int k = pattern.order();
  if (static_cast<int>(model.branch_vertices.size()) != k) return false;
  std::vector<int> use(static_cast<std::size_t>(host.order()), 0);
  for (Vertex x : model.branch_vertices) {
    if (x < 0 || x >= host.order() || use[x]) return false;
    use[x] = 1;
  }
  auto expected = pattern.edges();
  auto given = model.pattern_edges;
  std::sort(given.begin(), given.end());
  if (given != expected || model.paths.size() != model.pattern_edges.size())
    return false;
  for (std::size_t i = 0; i < model.paths.size(); ++i) {
    const auto& path = model.paths[i];
    const Edge e = model.pattern_edges[i];
    if (path.size() < 2) return false;
    const Vertex a = model.branch_vertices[e.u];
    const Vertex b = model.branch_vertices[e.v];
    if (!((path.front() == a && path.back() == b) ||
          (path.front() == b && path.back() == a)))
      return false;
    for (std::size_t j = 0; j + 1 < path.size(); ++j) {
      if (path[j] < 0 || path[j] >= host.order() ||
          path[j + 1] < 0 || path[j + 1] >= host.order() ||
          !host.adjacent(path[j], path[j + 1]))
        return false;
    }
    for (std::size_t j = 1; j + 1 < path.size(); ++j) {
      if (use[path[j]]) return false;
      use[path[j]] = 1;
    }
  }
  return true;
}

bool is_isomorphism(const Graph& g, const Graph& h, const Permutation& map) {
  if (g.order() != h.order() || g.size() != h.size() ||
      static_cast<int>(map.size()) != g.order())
    return false;
  std::vector<char> hit(map.size(), 0);
  for (Vertex y : map) {
    if (y < 0 || y >= h.order() || hit[y]) return false;
    hit[y] = 1;
  }
  for (const Edge& e : g.edges()) {
    if (!h.adjacent(map[e.u], map[e.v])) return false;
  }
  return true;
}

MinorModel minor_model_from(const TopologicalModel& model) {
  std::vector<std::vector<Vertex>> sets(model.branch_vertices.size());
  for (std::size_t p = 0; p < sets.size(); ++p)
    sets[p].push_back(model.branch_vertices[p]);
  for (std::size_t i = 0; i < model.paths.size(); ++i) {
    const Edge e = model.pattern_edges[i];
    const auto& path = model.paths[i];
    for (std::size_t j = 1; j + 1 < path.size(); ++j) sets[e.u].push_back(path[j]);
  }
  MinorModel out;
  for (auto& s : sets) out.branch_sets.emplace_back(std::move(s));
  return out;
}

}  // namespace torsolab
