#pragma once

#include <string>
#include <string_view>

#include "torsolab/graph.hpp"

namespace torsolab {

enum class GraphFormat { kEdgeList, kGraph6 };

/// Edge list: a `n=<count>` line followed by one `<u> <v>` line per edge.
/// graph6: the standard header-free ASCII encoding (a leading `>>graph6<<`
/// is tolerated on input). Throws ParseError naming line and offset.
Graph parse_graph(std::string_view text, GraphFormat format);

/// Newline-terminated text; edge lists are emitted sorted with u < v.
std::string emit_graph(const Graph& g, GraphFormat format);

}  // namespace torsolab
