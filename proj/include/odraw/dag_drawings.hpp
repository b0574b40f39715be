#pragma once

#include <vector>

#include "odraw/instance.hpp"
#include "odraw/oracle.hpp"
#include "odraw/runtime.hpp"

namespace odraw {

std::vector<Record> dominance_input(const PlainDag& dag);

// left_spanning iff in_rank == 1, right_spanning iff in_rank == indegree.
ServerArray mark_spanning(ScanRuntime& rt, ServerArray edges);

// Euler tour of a spanning tree, built client-side from marked edges. The x
// tree keeps every node's right-spanning edge and lists children leftmost
// first; the y tree keeps left-spanning edges and lists children rightmost
// first. Edges carry the original indegree of their child.
std::vector<TourEdge> spanning_tour(const std::vector<DagEdge>& marked, std::size_t n, Axis axis);

// One CoordTuple per tour edge; the last edge carries the source tuple.
ServerArray dominance_coordinates(ScanRuntime& rt, ServerArray tour, Axis axis, DominanceMode mode);

// Pairs both axis streams per node; PointRecords in name order.
ServerArray finalize_dominance(ScanRuntime& rt, ServerArray xs, ServerArray ys, std::size_t n);

Drawing run_dominance(const PlainDag& dag, DominanceMode mode, const RuntimeConfig& config,
                      TraceLog* trace = nullptr);

// SPQ tour with parent_spq, child_spq, src, snk and at_root slots. The tour
// starts and ends with an edge pair from a virtual parent (id n) to the root,
// the only edges with at_root set.
std::vector<Record> spq_input(const PlainSpq& spq);

// Adds stamp (Q leaves closed before the edge) and b_prime (Q leaves opened
// earlier on the edge's level) to every edge.
ServerArray spq_stamp(ScanRuntime& rt, ServerArray tour);
// KeyedValue (parent, child ordinal, [b, b', snk]) per tree node, sorted by
// key; the root's entry has parent n.
ServerArray spq_child_values(ScanRuntime& rt, ServerArray stamped, std::size_t n);
// sibling_b and sibling_b_prime from the other child of the parent, on a
// stamped tour. Checks the join vertex of every S node.
ServerArray spq_attach_siblings(ScanRuntime& rt, ServerArray stamped);
// PointRecords for the graph's vertices in name order.
ServerArray spq_place(ScanRuntime& rt, ServerArray tour, std::size_t vertices);

Drawing run_delta(const PlainSpq& spq, const RuntimeConfig& config, TraceLog* trace = nullptr);
DeltaSizes run_delta_sizes(const PlainSpq& spq, const RuntimeConfig& config);

}  // namespace odraw
