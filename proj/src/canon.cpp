#include "torsolab/canon.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>

#include "canon_search.hpp"

namespace torsolab {

namespace {

void validate(const ColoredGraph& cg) {
  if (!cg.colors.empty() && static_cast<int>(cg.colors.size()) != cg.graph.order()) {
    throw InputError("color list length differs from the vertex count");
  }
  for (int c : cg.colors) {
    if (c < 0) throw InputError("colors must be non-negative");
  }
}

void put_u32(std::string& out, std::uint32_t x) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<char>((x >> shift) & 0xffu));
}

class Matrix {
 public:
  explicit Matrix(const Graph& g)
      : n_(g.order()), cells_(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0) {
    for (const Edge& e : g.edges()) {
      cells_[index(e.u, e.v)] = 1;
      cells_[index(e.v, e.u)] = 1;
    }
  }
  bool operator()(Vertex u, Vertex v) const { return cells_[index(u, v)] != 0; }
  int order() const { return n_; }

 private:
  std::size_t index(Vertex u, Vertex v) const {
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
  }
  int n_;
  std::vector<std::uint8_t> cells_;
};

// Refined classes as sorted member lists, in class order.
std::vector<std::vector<Vertex>> classes_of(const ColoredGraph& cg) {
  const std::vector<int> refined = refine_colors(cg);
  const int count = refined.empty() ? 0 : *std::max_element(refined.begin(), refined.end()) + 1;
  std::vector<std::vector<Vertex>> out(static_cast<std::size_t>(count));
  for (Vertex v = 0; v < cg.graph.order(); ++v) out[refined[v]].push_back(v);
  return out;
}

std::vector<Vertex> search_exhaustive(const ColoredGraph& cg, const detail::Extension* ext) {
  const Matrix adj(cg.graph);
  const int n = adj.order();
  auto classes = classes_of(cg);
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::vector<Vertex> best;
  std::vector<std::uint8_t> best_bits;
  std::vector<std::uint8_t> bits;
  std::string best_ext;
  while (true) {
    std::size_t p = 0;
    for (const auto& cls : classes)
      for (Vertex v : cls) order[p++] = v;
    // -1 smaller, 0 equal, 1 larger than best so far
    int cmp = best.empty() ? -1 : 0;
    bits.clear();
    for (int i = 0; i < n && cmp <= 0; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const std::uint8_t b = adj(order[i], order[j]) ? 1 : 0;
        if (cmp == 0 && b != best_bits[bits.size()]) cmp = b < best_bits[bits.size()] ? -1 : 1;
        bits.push_back(b);
        if (cmp > 0) break;
      }
    }
    if (cmp < 0) {
      best = order;
      best_bits = bits;
      if (ext) best_ext = (*ext)(order);
    } else if (cmp == 0 && ext) {
      std::string e = (*ext)(order);
      if (e < best_ext) {
        best = order;
        best_ext = std::move(e);
      }
    }
    std::size_t k = classes.size();
    while (k > 0 && !std::next_permutation(classes[k - 1].begin(), classes[k - 1].end())) --k;
    if (k == 0) break;
  }
  return best;
}

class RefinedSearch {
 public:
  RefinedSearch(const ColoredGraph& cg, const detail::Extension* ext)
      : adj_(cg.graph), n_(cg.graph.order()), ext_(ext), order_(static_cast<std::size_t>(n_)),
        rows_(static_cast<std::size_t>(n_)) {}

  std::vector<Vertex> run(std::vector<std::vector<Vertex>> cells) {
    if (n_ > 0) search(0, std::move(cells));
    return best_order_;
  }

 private:
  using Row = std::vector<int>;

  Row row_of(Vertex v, const std::vector<std::vector<Vertex>>& cells) const {
    Row row;
    row.reserve(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) {
      int a = 0;
      for (Vertex w : cells[k]) a += (w != v && adj_(v, w)) ? 1 : 0;
      row.push_back(a);
    }
    return row;
  }

  bool twins(Vertex u, Vertex w) const {
    for (Vertex x = 0; x < n_; ++x) {
      if (x != u && x != w && adj_(u, x) != adj_(w, x)) return false;
    }
    return true;
  }

  // Orbit representative of x under generators fixing the prefix pointwise.
  std::vector<int> orbits(int depth) const {
    std::vector<int> parent(static_cast<std::size_t>(n_));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const Permutation& gamma : generators_) {
      bool fixes = true;
      for (int i = 0; i < depth && fixes; ++i) fixes = gamma[order_[i]] == order_[i];
      if (!fixes) continue;
      for (Vertex x = 0; x < n_; ++x) {
        const int a = find(x);
        const int b = find(gamma[x]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    for (Vertex x = 0; x < n_; ++x) parent[x] = find(x);
    return parent;
  }

  void leaf() {
    if (best_order_.empty() || equal_prefix_ < n_) {
      adopt();
      return;
    }
    if (!ext_) {
      record_automorphism();
      return;
    }
    std::string e = (*ext_)(order_);
    if (e < best_ext_) {
      best_order_ = order_;
      best_rows_ = rows_;
      best_ext_ = std::move(e);
    } else if (e == best_ext_) {
      record_automorphism();
    }
  }

  void adopt() {
    best_order_ = order_;
    best_rows_ = rows_;
    if (ext_) best_ext_ = (*ext_)(order_);
    equal_prefix_ = n_;
  }

  void record_automorphism() {
    Permutation gamma(static_cast<std::size_t>(n_));
    for (int p = 0; p < n_; ++p) gamma[order_[p]] = best_order_[p];
    generators_.push_back(std::move(gamma));
  }

  void search(int depth, std::vector<std::vector<Vertex>> cells) {
    if (depth == n_) {
      leaf();
      return;
    }
    const std::vector<Vertex> first = cells.front();
    std::vector<Row> rows;
    Row least;
    for (Vertex v : first) {
      rows.push_back(row_of(v, cells));
      if (least.empty() || rows.back() < least) least = rows.back();
    }
    std::vector<Vertex> tried;
    for (std::size_t k = 0; k < first.size(); ++k) {
      const Vertex v = first[k];
      if (rows[k] != least) continue;
      equal_prefix_ = std::min(equal_prefix_, depth);
      if (!best_order_.empty() && equal_prefix_ == depth) {
        if (least > best_rows_[depth]) return;
        if (least == best_rows_[depth]) equal_prefix_ = depth + 1;
      }
      if (!tried.empty()) {
        if (!ext_ && std::any_of(tried.begin(), tried.end(), [&](Vertex u) { return twins(u, v); })) {
          continue;
        }
        const auto orbit = orbits(depth);
        if (std::any_of(tried.begin(), tried.end(),
                        [&](Vertex u) { return orbit[u] == orbit[v]; })) {
          continue;
        }
      }
      tried.push_back(v);
      order_[depth] = v;
      rows_[depth] = least;
      std::vector<std::vector<Vertex>> next;
      for (const auto& cell : cells) {
        std::vector<Vertex> apart;
        std::vector<Vertex> joined;
        for (Vertex w : cell) {
          if (w == v) continue;
          (adj_(v, w) ? joined : apart).push_back(w);
        }
        if (!apart.empty()) next.push_back(std::move(apart));
        if (!joined.empty()) next.push_back(std::move(joined));
      }
      search(depth + 1, std::move(next));
    }
  }

  Matrix adj_;
  int n_;
  const detail::Extension* ext_;
  std::vector<Vertex> order_;
  std::vector<Row> rows_;
  std::vector<Vertex> best_order_;
  std::vector<Row> best_rows_;
  std::string best_ext_;
  int equal_prefix_ = 0;
  std::vector<Permutation> generators_;
};

}  // namespace

namespace detail {

std::vector<Vertex> canonical_order(const ColoredGraph& cg, const Extension* ext,
                                    bool exhaustive) {
  validate(cg);
  if (exhaustive) return search_exhaustive(cg, ext);
  return RefinedSearch(cg, ext).run(classes_of(cg));
}

CanonicalForm form_from_order(const ColoredGraph& cg, const std::vector<Vertex>& order) {
  CanonicalForm out;
  out.witness.assign(order.size(), 0);
  for (std::size_t p = 0; p < order.size(); ++p) out.witness[order[p]] = static_cast<Vertex>(p);
  std::vector<int> colors;
  if (!cg.colors.empty()) {
    colors.resize(order.size());
    for (std::size_t p = 0; p < order.size(); ++p) colors[p] = cg.colors[order[p]];
  }
  out.certificate = serialize({relabel(cg.graph, out.witness), std::move(colors)});
  return out;
}

}  // namespace detail

std::string serialize(const ColoredGraph& cg) {
  validate(cg);
  const int n = cg.graph.order();
  std::string out;
  if (n == 0) return out;
  put_u32(out, static_cast<std::uint32_t>(n));
  for (Vertex v = 0; v < n; ++v) put_u32(out, static_cast<std::uint32_t>(cg.color(v)));
  const Matrix adj(cg.graph);
  std::uint8_t byte = 0;
  int filled = 0;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      byte = static_cast<std::uint8_t>((byte << 1) | (adj(u, v) ? 1 : 0));
      if (++filled == 8) {
        out.push_back(static_cast<char>(byte));
        byte = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>(byte << (8 - filled)));
  return out;
}

std::vector<int> refine_colors(const ColoredGraph& cg) {
  validate(cg);
  const Graph& g = cg.graph;
  const int n = g.order();
  std::vector<int> colors(static_cast<std::size_t>(n));
  {
    std::vector<int> values;
    for (Vertex v = 0; v < n; ++v) values.push_back(cg.color(v));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (Vertex v = 0; v < n; ++v) {
      colors[v] = static_cast<int>(std::lower_bound(values.begin(), values.end(), cg.color(v)) -
                                   values.begin());
    }
  }
  int classes = n == 0 ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
  while (true) {
    std::vector<std::pair<int, std::vector<int>>> signature(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
      signature[v].first = colors[v];
      for (Vertex w : g.neighbors(v)) signature[v].second.push_back(colors[w]);
      std::sort(signature[v].second.begin(), signature[v].second.end());
    }
    auto distinct = signature;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (Vertex v = 0; v < n; ++v) {
      colors[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), signature[v]) -
                                   distinct.begin());
    }
    if (static_cast<int>(distinct.size()) == classes) return colors;
    classes = static_cast<int>(distinct.size());
  }
}

CanonicalForm canonise_small(const ColoredGraph& cg, int ceiling) {
  if (cg.graph.order() > ceiling) {
    throw SizeLimitError("exhaustive canonisation supports at most " + std::to_string(ceiling) +
                         " vertices");
  }
  return detail::form_from_order(cg, detail::canonical_order(cg, nullptr, true));
}

CanonicalForm canonise_refined(const ColoredGraph& cg) {
  return detail::form_from_order(cg, detail::canonical_order(cg, nullptr, false));
}

CanonicalForm canonise_torso(const Graph& torso, const std::vector<int>& colors,
                             const TorsoConstraint&) {
  const ColoredGraph cg{torso, colors};
  if (torso.order() <= kExhaustiveCeiling) return canonise_small(cg);
  return canonise_refined(cg);
}

std::string to_hex(const std::string& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (char c : bytes) {
    const auto b = static_cast<unsigned char>(c);
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xfu]);
  }
  return out;
}

}  // namespace torsolab
