#pragma once

#include <climits>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "torsolab/errors.hpp"
#include "torsolab/graph.hpp"
#include "torsolab/oracles.hpp"

namespace torsolab {

/// Disjunctive guarantee every torso must meet: no `excluded_minor` as a
/// minor, or at most `apex_budget` apices whose removal leaves maximum
/// degree <= `degree_bound`. An arm is active when its field is set.
/// The default constraint is the unrestricted degree arm.
struct TorsoConstraint {
  std::optional<PatternGraph> excluded_minor;
  int apex_budget = 0;
  std::optional<int> degree_bound = INT_MAX;

  static TorsoConstraint excluding(PatternGraph pattern);
  static TorsoConstraint bounded_degree(int apices, int degree);
  static TorsoConstraint either(PatternGraph pattern, int apices, int degree);

  /// Throws InputError unless at least one arm is active and a >= 0, d >= 0.
  void validate() const;
};

/// Rooted tree of bags; parent[root] == root. The adhesion of a non-root
/// node is bag(node) ∩ bag(parent).
struct TreeDecomposition {
  std::vector<VertexSet> bags;
  std::vector<int> parent;

  std::size_t size() const { return bags.size(); }
  /// First node that is its own parent, or -1.
  int root() const;
  VertexSet adhesion(int node) const;
  std::vector<std::vector<int>> children() const;

  friend bool operator==(const TreeDecomposition&, const TreeDecomposition&) = default;
};

enum class ViolationKind {
  kMalformed,
  kCoverage,
  kEdgeCoverage,
  kConnectivity,
  kTorsoMinor,
  kTorsoDegree,
  kUnverifiable,
  kInvariance,
};

std::string_view to_string(ViolationKind kind);
std::optional<ViolationKind> violation_kind_from(std::string_view name);

/// One failed check. `vertices` holds host labels: the uncovered vertex,
/// the uncovered edge, the disconnected vertex, or for torso failures the
/// vertices of degree > d. Minor witnesses are models in the torso.
struct Violation {
  ViolationKind kind = ViolationKind::kMalformed;
  int node = -1;
  std::vector<Vertex> vertices;
  std::optional<MinorModel> minor_witness;
  std::string detail;
};

struct VerificationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
};

/// Thrown when an operation receives a decomposition that fails its checks.
class VerificationError : public Error {
 public:
  explicit VerificationError(VerificationReport report);
  const VerificationReport& report() const noexcept { return report_; }

 private:
  VerificationReport report_;
};

/// Resource bounds for the separator-based decomposers.
struct DecompositionBudget {
  int max_bag_size = INT_MAX;
  int max_adhesion = INT_MAX;
  std::size_t max_search_steps = 200'000;
  std::size_t max_dag_nodes = 10'000;
};

class DecompositionNotFound : public Error {
 public:
  DecompositionNotFound(const std::string& detail, TreeDecomposition partial,
                        VertexSet part, VertexSet boundary);

  /// Satisfies the three tree-decomposition axioms; torsos of the
  /// offending parts may violate the constraint.
  const TreeDecomposition& partial() const noexcept { return partial_; }
  const VertexSet& part() const noexcept { return part_; }
  const VertexSet& boundary() const noexcept { return boundary_; }

 private:
  TreeDecomposition partial_;
  VertexSet part_;
  VertexSet boundary_;
};

/// Outcome of checking one torso against a constraint.
struct TorsoCheck {
  bool ok = false;
  std::optional<VertexSet> apex_set;  // torso labels, when the degree arm holds
  std::vector<Violation> violations;  // torso labels, node == -1
};

TorsoCheck check_torso(const Graph& torso, const TorsoConstraint& c,
                       const OracleLimits& limits = {});

/// Bag induced subgraph plus cliques on every adhesion incident to `node`.
/// Vertex i of the result is bag(node)[i]. Throws VerificationError when the
/// decomposition is not a valid tree decomposition of g.
Graph torso(const Graph& g, const TreeDecomposition& t, int node);

/// Shape, coverage, edge coverage and connectivity only.
VerificationReport verify_axioms(const Graph& g, const TreeDecomposition& t);

VerificationReport verify_decomposition(const Graph& g,
                                        const TreeDecomposition& t,
                                        const TorsoConstraint& c,
                                        const OracleLimits& limits = {});

/// Smallest S (|S| <= max_size, lexicographically least among the smallest)
/// such that every component of g - S holds at most floor(|w|/2) vertices
/// of w.
std::optional<VertexSet> find_separator(const Graph& g, const VertexSet& w,
                                        int max_size);

/// Separator-based decomposition whose torsos all satisfy `c`. The result
/// is certified by verify_decomposition before it is returned.
TreeDecomposition decompose(const Graph& g, const TorsoConstraint& c,
                            const DecompositionBudget& budget = {},
                            const OracleLimits& limits = {});

/// Decomposition from an elimination ordering: bag(v) = v plus its later
/// neighbors in the fill-in graph.
TreeDecomposition elimination_decomposition(const Graph& g,
                                            const std::vector<Vertex>& order);

/// Elimination decomposition using the min-degree ordering (ties by label).
TreeDecomposition heuristic_decomposition(const Graph& g);

}  // namespace torsolab
