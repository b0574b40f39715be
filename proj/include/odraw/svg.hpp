#pragma once

#include <string>
#include <utility>
#include <vector>

#include "odraw/algorithms.hpp"

namespace odraw {

using EdgeList = std::vector<std::pair<NodeId, NodeId>>;

// Points become labeled circles joined by the given edges; rectangles are
// drawn back to front in the given order. The y axis points up. Coordinates
// use six fractional digits.
std::string emit_svg(const Drawing& drawing, const EdgeList& edges = {});

// Edges to draw for an instance: tree edges, or the digraph's edges. Ids
// refer to the drawing's names.
EdgeList drawing_edges(const Instance& instance);

}  // namespace odraw
