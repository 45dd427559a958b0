#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support/test_support.hpp"
#include "torsolab/generators.hpp"
#include "torsolab/treelike.hpp"

using namespace torsolab;
namespace gen = torsolab::generators;

namespace {

bool has_bag(const TreelikeDecomposition& d, const VertexSet& bag) {
  return std::any_of(d.nodes.begin(), d.nodes.end(),
                     [&](const TreelikeNode& x) { return x.bag == bag; });
}

VertexSet image(const VertexSet& s, const std::vector<Vertex>& perm) {
  std::vector<Vertex> out;
  for (Vertex v : s) out.push_back(perm[v]);
  return VertexSet(out);
}

// d relabeled by perm, back in normal form.
TreelikeDecomposition relabeled(const TreelikeDecomposition& d, const std::vector<Vertex>& perm) {
  std::vector<TreelikeNode> nodes;
  for (const TreelikeNode& x : d.nodes) {
    nodes.push_back({image(x.bag, perm), image(x.part, perm), image(x.boundary, perm), x.role});
  }
  return normalized(nodes, d.arcs);
}

const std::vector<TorsoConstraint>& grid() {
  static const std::vector<TorsoConstraint> constraints{
      TorsoConstraint::bounded_degree(0, 2),
      TorsoConstraint::bounded_degree(0, 3),
      TorsoConstraint::bounded_degree(1, 2),
      TorsoConstraint::excluding(gen::complete(3)),
      TorsoConstraint::excluding(gen::complete(4)),
  };
  return constraints;
}

DecompositionBudget bags_of(int size) {
  DecompositionBudget budget;
  budget.max_bag_size = size;
  return budget;
}

}  // namespace

TEST_CASE("single vertex gives one root bag and no arcs") {
  const auto d = invariant_decompose(Graph(1), TorsoConstraint{});
  REQUIRE(d.size() == 1);
  CHECK(d.nodes[0].bag == VertexSet{0});
  CHECK(d.arcs.empty());
  CHECK(d.roots == std::vector<int>{0});
}

TEST_CASE("C4 is fixed by all eight automorphisms") {
  const Graph c4 = gen::cycle(4);
  const auto d = invariant_decompose(c4, TorsoConstraint{}, bags_of(3));
  CHECK(verify_treelike(c4, d, TorsoConstraint{}).ok());
  CHECK(d.size() > 1);
  const auto auts = automorphisms(c4);
  REQUIRE(auts.size() == 8);
  for (const auto& sigma : auts) CHECK(relabeled(d, sigma) == d);
  CHECK(verify_invariance(c4, d).ok());
}

TEST_CASE("embedded tree decomposition of C4 is not invariant") {
  const Graph c4 = gen::cycle(4);
  const TreeDecomposition t{{VertexSet{0, 1, 3}, VertexSet{1, 2, 3}}, {0, 0}};
  const auto d = from_tree_decomposition(c4, t);
  CHECK(verify_treelike(c4, d, TorsoConstraint{}).ok());
  const auto rotation = std::vector<Vertex>{1, 2, 3, 0};
  CHECK_FALSE(has_bag(d, image(VertexSet{0, 1, 3}, rotation)));
  const auto report = verify_invariance(c4, d);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].kind == ViolationKind::kInvariance);
}

TEST_CASE("rigid graphs: invariance holds and the tree decomposer's bags are present") {
  std::mt19937_64 rng(41);
  int rigid = 0;
  for (int trial = 0; trial < 300 && rigid < 25; ++trial) {
    const Graph g = testing::random_graph(rng, 6 + static_cast<int>(rng() % 4), 0.35);
    if (automorphisms(g).size() != 1) continue;
    const TorsoConstraint& c = grid()[rng() % grid().size()];
    try {
      const auto d = invariant_decompose(g, c);
      const auto t = decompose(g, c);
      ++rigid;
      CHECK(verify_invariance(g, d).ok());
      for (const VertexSet& bag : t.bags) CHECK(has_bag(d, bag));
    } catch (const DecompositionNotFound&) {
      CHECK_THROWS_AS(decompose(g, c), DecompositionNotFound);
    }
  }
  CHECK(rigid >= 10);
}

TEST_CASE("invariant_decompose commutes with relabeling") {
  std::mt19937_64 rng(7);
  int built = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const Graph g = testing::random_graph(rng, n, 0.3 + 0.1 * static_cast<double>(rng() % 3));
    const TorsoConstraint& c = grid()[rng() % grid().size()];
    const auto perm = testing::random_permutation(rng, n);
    try {
      const auto d = invariant_decompose(g, c);
      ++built;
      CHECK(invariant_decompose(relabel(g, perm), c) == relabeled(d, perm));
      CHECK(verify_treelike(g, d, c).ok());
      CHECK(verify_invariance(g, d).ok());
      CHECK(invariant_decompose(g, c) == d);
    } catch (const DecompositionNotFound&) {
      CHECK_THROWS_AS(invariant_decompose(relabel(g, perm), c), DecompositionNotFound);
    }
  }
  CHECK(built > 60);
}

TEST_CASE("embedded tree decompositions satisfy the local part conditions") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = testing::random_graph(rng, 1 + static_cast<int>(rng() % 10), 0.3);
    const auto d = from_tree_decomposition(g, heuristic_decomposition(g));
    CHECK(verify_treelike(g, d, TorsoConstraint{}).ok());
  }
}

TEST_CASE("disconnected graphs get a join root") {
  const Graph g = gen::disjoint_union(gen::cycle(4), gen::cycle(4));
  const TorsoConstraint c{};
  const auto d = invariant_decompose(g, c, bags_of(3));
  REQUIRE(d.roots.size() == 1);
  CHECK(d.nodes[d.roots[0]].role == NodeRole::kJoin);
  CHECK(d.nodes[d.roots[0]].bag.empty());
  CHECK(verify_treelike(g, d, c).ok());
  CHECK(verify_invariance(g, d).ok());
}

TEST_CASE("verify_treelike detects broken structure") {
  const Graph c4 = gen::cycle(4);
  const TorsoConstraint c{};
  const auto d = invariant_decompose(c4, c, bags_of(3));
  SUBCASE("cycle") {
    auto bad = d;
    bad.arcs.emplace_back(bad.arcs.front().second, bad.arcs.front().first);
    CHECK(verify_treelike(c4, bad, c).has(ViolationKind::kMalformed));
  }
  SUBCASE("wrong boundary") {
    auto bad = d;
    const int leaf = bad.arcs.front().second;
    bad.nodes[leaf].boundary = VertexSet{bad.nodes[leaf].bag[0]};
    CHECK(verify_treelike(c4, bad, c).has(ViolationKind::kConnectivity));
  }
  SUBCASE("coverage") {
    const Graph bigger(5, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    CHECK(verify_treelike(bigger, d, TorsoConstraint{}).has(ViolationKind::kCoverage));
  }
  SUBCASE("torso") {
    CHECK(verify_treelike(c4, d, TorsoConstraint::bounded_degree(0, 0))
              .has(ViolationKind::kTorsoDegree));
  }
}

TEST_CASE("node ceiling") {
  DecompositionBudget budget = bags_of(3);
  budget.max_dag_nodes = 2;
  CHECK_THROWS_AS(invariant_decompose(gen::cycle(6), TorsoConstraint{}, budget),
                  ResourceError);
}

TEST_CASE("invariance is unverifiable above the ceiling") {
  const Graph g = gen::cycle(18);
  TreelikeDecomposition d = normalized({{VertexSet::range(18), VertexSet::range(18), {}, NodeRole::kLeaf}}, {});
  CHECK(verify_invariance(g, d).has(ViolationKind::kUnverifiable));
}
