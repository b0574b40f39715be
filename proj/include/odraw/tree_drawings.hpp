#pragma once

#include <cstddef>
#include <vector>

#include "odraw/instance.hpp"
#include "odraw/runtime.hpp"

namespace odraw {

std::size_t ceil_log2(std::size_t n);

// Tour with parent_area / child_area slots (or a root marker).
std::vector<Record> treemap_input(const PlainTree& tree);

// Slice-and-dice treemap in one tour round; RectRecords in name order.
ServerArray treemap_layout(ScanRuntime& rt, ServerArray tour, std::size_t n, const Rational& width,
                           const Rational& height);
Drawing run_treemap(const PlainTree& tree, const Rational& width, const Rational& height,
                    const RuntimeConfig& config, TraceLog* trace = nullptr);

// Attaches subsize, parent_subsize and is_solid to every edge of a binary
// tree's tour. Solid is the larger child, the right one on ties, an only child.
ServerArray brect_annotate(ScanRuntime& rt, ServerArray tour, std::size_t n);
// width = 2 x leaves per node, from a plain tour; KeyedValues in name order.
ServerArray brect_widths(ScanRuntime& rt, ServerArray tour, std::size_t n);
// New tags and next links for the tour that descends solid edges first, plus
// refx = 2 x (leaves before it) on leaf down edges.
ServerArray solid_first_order(ScanRuntime& rt, ServerArray marked);
// PointRecords in name order. `stack_peak` receives the deepest CoordStack.
ServerArray brect_assign_xy(ScanRuntime& rt, ServerArray reordered, std::size_t n,
                            std::size_t* stack_peak = nullptr);

std::size_t brect_stack_bound(std::size_t n);
std::size_t brect_workspace_budget(std::size_t n);

Drawing run_brect(const PlainTree& tree, const RuntimeConfig& config, TraceLog* trace = nullptr,
                  std::size_t* stack_peak = nullptr);

}  // namespace odraw
