// Canonical forms along a treelike decomposition.
//
// code(P, β) for a part P with its boundary listed in the order β is
//   real adjacency among β
//   ‖ min over the nodes X of (P, set(β)) of
//       serialize(torso(X) under its least labeling λ)
//       ‖ sorted blocks (positions of B' under λ, code(P', B' in λ order))
// where the torso colors β by position and inner vertices by a hint about
// the child parts they touch. λ ranges over the labelings that fix β, so
// equal codes mean isomorphic parts with the boundaries matched in order.
// The canonical order of P is λ followed by the interiors of the children
// in block order.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <tuple>

#include "canon_search.hpp"
#include "torsolab/canon.hpp"

namespace torsolab {

namespace {

void put_u32(std::string& out, std::size_t x) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    out.push_back(static_cast<char>((x >> shift) & 0xffu));
  }
}

void put_block(std::string& out, const std::string& bytes) {
  put_u32(out, bytes.size());
  out += bytes;
}

struct PartCode {
  std::string code;
  std::vector<Vertex> order;  // all of P, starting with the boundary order
};

class Lifter {
 public:
  Lifter(const Graph& g, const TreelikeDecomposition& d) : g_(g), d_(d), kids_(d.children()) {
    for (int i = 0; i < static_cast<int>(d.size()); ++i) {
      alternatives_[{d.nodes[i].part, d.nodes[i].boundary}].push_back(i);
    }
  }

  const PartCode& code(const VertexSet& part, const std::vector<Vertex>& beta) {
    const auto key = std::make_pair(part, beta);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::string prefix;
    for (std::size_t i = 0; i < beta.size(); ++i)
      for (std::size_t j = i + 1; j < beta.size(); ++j)
        prefix.push_back(g_.adjacent(beta[i], beta[j]) ? 1 : 0);
    std::optional<PartCode> best;
    for (int node : alternatives_.at({part, VertexSet(beta)})) {
      PartCode alt = node_code(node, beta);
      if (!best || alt.code < best->code) best = std::move(alt);
    }
    PartCode out;
    put_block(out.code, prefix);
    out.code += best->code;
    out.order = std::move(best->order);
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  struct ChildPart {
    VertexSet part;
    VertexSet boundary;
    std::vector<int> local;  // boundary as bag indices
  };

  PartCode node_code(int node, const std::vector<Vertex>& beta) {
    const VertexSet& bag = d_.nodes[node].bag;
    const int size = static_cast<int>(bag.size());
    const int k = static_cast<int>(beta.size());

    std::vector<ChildPart> parts;
    {
      std::set<std::pair<VertexSet, VertexSet>> seen;
      for (int child : kids_[node]) {
        const TreelikeNode& c = d_.nodes[child];
        if (!seen.emplace(c.part, c.boundary).second) continue;
        ChildPart p{c.part, c.boundary, {}};
        for (Vertex v : c.boundary) p.local.push_back(bag.index_of(v));
        parts.push_back(std::move(p));
      }
    }

    auto [graph, mapping] = induced_subgraph(g_, bag);
    std::vector<Vertex> local_beta;
    for (Vertex v : beta) local_beta.push_back(mapping[v]);
    graph = add_clique(graph, VertexSet(local_beta));
    for (const ChildPart& p : parts) {
      graph = add_clique(graph, VertexSet(std::vector<Vertex>(p.local.begin(), p.local.end())));
    }

    using Hint = std::vector<std::tuple<std::size_t, std::size_t, std::size_t>>;
    std::vector<Hint> hints(static_cast<std::size_t>(size));
    for (const ChildPart& p : parts) {
      const std::size_t alts = alternatives_.at({p.part, p.boundary}).size();
      for (int i : p.local) hints[i].emplace_back(p.part.size(), p.boundary.size(), alts);
    }
    for (Hint& h : hints) std::sort(h.begin(), h.end());
    std::vector<Hint> distinct;
    for (int i = 0; i < size; ++i)
      if (std::find(local_beta.begin(), local_beta.end(), i) == local_beta.end()) distinct.push_back(hints[i]);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<int> colors(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) {
      const auto at = std::find(local_beta.begin(), local_beta.end(), i);
      colors[i] = at != local_beta.end()
                      ? static_cast<int>(at - local_beta.begin())
                      : k + static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), hints[i]) -
                                             distinct.begin());
    }
    const ColoredGraph cg{std::move(graph), std::move(colors)};

    // Blocks under a labeling, sorted, each tagged with its child part.
    auto blocks = [&](const std::vector<Vertex>& order) {
      std::vector<int> position(static_cast<std::size_t>(size));
      for (int p = 0; p < size; ++p) position[order[p]] = p;
      std::vector<std::pair<std::string, std::size_t>> out;
      for (std::size_t j = 0; j < parts.size(); ++j) {
        std::vector<int> local = parts[j].local;
        std::sort(local.begin(), local.end(),
                  [&](int a, int b) { return position[a] < position[b]; });
        std::string block;
        std::vector<Vertex> child_beta;
        put_u32(block, local.size());
        for (int i : local) {
          put_u32(block, static_cast<std::size_t>(position[i]));
          child_beta.push_back(bag[static_cast<std::size_t>(i)]);
        }
        put_block(block, code(parts[j].part, child_beta).code);
        out.emplace_back(std::move(block), j);
      }
      std::sort(out.begin(), out.end());
      return out;
    };
    auto extension_of = [&](const std::vector<Vertex>& order) {
      std::string out;
      const auto sorted = blocks(order);
      put_u32(out, sorted.size());
      for (const auto& [block, unused] : sorted) out += block;
      return out;
    };

    std::vector<Vertex> order;
    if (parts.empty()) {
      order = detail::canonical_order(cg, nullptr, size <= kExhaustiveCeiling);
    } else {
      const detail::Extension ext = extension_of;
      order = detail::canonical_order(cg, &ext, false);
    }

    PartCode out;
    put_block(out.code, detail::form_from_order(cg, order).certificate);
    out.code += extension_of(order);
    for (Vertex i : order) out.order.push_back(bag[static_cast<std::size_t>(i)]);
    for (const auto& [block, j] : blocks(order)) {
      std::vector<Vertex> child_beta;
      for (Vertex v : out.order)
        if (parts[j].boundary.contains(v)) child_beta.push_back(v);
      const PartCode& child = code(parts[j].part, child_beta);
      out.order.insert(out.order.end(), child.order.begin() + static_cast<std::ptrdiff_t>(child_beta.size()),
                       child.order.end());
    }
    return out;
  }

  const Graph& g_;
  const TreelikeDecomposition& d_;
  std::vector<std::vector<int>> kids_;
  std::map<std::pair<VertexSet, VertexSet>, std::vector<int>> alternatives_;
  std::map<std::pair<VertexSet, std::vector<Vertex>>, PartCode> memo_;
};

}  // namespace

CanonicalForm lift_canonisation(const Graph& g, const TreelikeDecomposition& d,
                                const TorsoConstraint&, const OracleLimits& limits,
                                bool check_invariance) {
  VerificationReport report = verify_treelike(g, d, TorsoConstraint{}, limits);
  if (report.ok() && check_invariance) report = verify_invariance(g, d, limits);
  if (!report.ok()) throw VerificationError(std::move(report));

  Lifter lifter(g, d);
  const PartCode& root = lifter.code(VertexSet::range(g.order()), {});
  CanonicalForm out;
  out.witness.assign(static_cast<std::size_t>(g.order()), 0);
  for (std::size_t p = 0; p < root.order.size(); ++p) out.witness[root.order[p]] = static_cast<Vertex>(p);
  out.certificate = serialize({relabel(g, out.witness), {}});
  return out;
}

CanonicalForm canonical_form(const Graph& g, const TorsoConstraint& c,
                             const DecompositionBudget& budget, const OracleLimits& limits) {
  return lift_canonisation(g, invariant_decompose(g, c, budget, limits), c, limits, false);
}

bool isomorphic(const Graph& g, const Graph& h, const TorsoConstraint& c,
                const DecompositionBudget& budget, const OracleLimits& limits) {
  if (g.order() != h.order() || g.size() != h.size()) return false;
  return canonical_form(g, c, budget, limits).certificate ==
         canonical_form(h, c, budget, limits).certificate;
}

}  // namespace torsolab
