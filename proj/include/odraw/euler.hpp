#pragma once

#include <functional>
#include <string>
#include <vector>

#include "odraw/instance.hpp"
#include "odraw/records.hpp"
#include "odraw/runtime.hpp"

namespace odraw {

// Duplicated-edge Euler tour of an ordered tree: tag = position in the
// left-to-right cycle, next = (tag + 1) mod 2|E|. Tag 0 is the root's
// leftmost down edge.
std::vector<TourEdge> build_euler_tour(const PlainTree& tree);
std::vector<TourEdge> build_tour(NodeId root, const std::vector<std::vector<NodeId>>& children);

std::vector<Record> encode_all(const std::vector<TourEdge>& tour);

// Upload form of a tree: its tour, or a single root marker when the tree has
// no edges.
std::vector<Record> tour_input(const PlainTree& tree);
Record root_marker(NodeId root);

// Round that shuffles by tag and then walks pi(0), pi(next), ...
RoundSpec tour_round(std::string name, std::size_t state_words, std::function<Record(const TourEdge&)> step);

ServerArray traverse(ScanRuntime& rt, ServerArray tour, std::function<Record(const TourEdge&)> visitor,
                     std::size_t state_words = 0);

// Sorts the two copies of every edge together, up copy first, and scans.
struct PairSpec {
  std::string name;
  std::size_t state_words = 3;
  std::function<Record(const TourEdge& up)> on_up;
  std::function<Record(const TourEdge& up, const TourEdge& down)> on_down;
};
ServerArray pair_scan(ScanRuntime& rt, ServerArray tour, const PairSpec& spec);

// One sequential round over a single root marker (trees without edges).
ServerArray single_node_round(ScanRuntime& rt, ServerArray marker, std::string name,
                              std::function<Record(NodeId root)> emit);

// Results are KeyedValue (node, 0, [value]) in name order, length n.
ServerArray subtree_sizes(ScanRuntime& rt, ServerArray tour, std::size_t n);
ServerArray node_depths(ScanRuntime& rt, ServerArray tour, std::size_t n);

NodeValues decode_values(const std::vector<std::string>& names, const std::vector<Record>& records);

NodeValues run_subtree_sizes(const PlainTree& tree, const RuntimeConfig& config, TraceLog* trace = nullptr);
NodeValues run_node_depths(const PlainTree& tree, const RuntimeConfig& config, TraceLog* trace = nullptr);

}  // namespace odraw
