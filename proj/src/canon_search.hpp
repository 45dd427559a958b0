#pragma once

// Shared search entry for the canonisers. An extension appends a string to
// each leaf so that labelings with equal serializations are ordered by the
// extension as well; the lifting uses it for child codes.

#include <functional>
#include <string>
#include <vector>

#include "torsolab/canon.hpp"

namespace torsolab::detail {

/// Receives order[position] = vertex.
using Extension = std::function<std::string(const std::vector<Vertex>&)>;

/// Least (serialization, extension) labeling as a vertex order.
std::vector<Vertex> canonical_order(const ColoredGraph& cg, const Extension* ext,
                                    bool exhaustive);

CanonicalForm form_from_order(const ColoredGraph& cg, const std::vector<Vertex>& order);

}  // namespace torsolab::detail
