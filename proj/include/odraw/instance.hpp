#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "odraw/rational.hpp"
#include "odraw/records.hpp"

namespace odraw {

// Node names are stored sorted; a node's NodeId is its index in `names`.
NodeId lookup_name(const std::vector<std::string>& names, const std::string& name);

struct TreeNodeSpec {
  std::string name;
  std::string parent;  // empty for the root
  std::int64_t child_index = 0;
  std::optional<std::int64_t> area;
};

struct PlainTree {
  std::vector<std::string> names;
  NodeId root = 0;
  std::vector<NodeId> parent;  // -1 for the root
  std::vector<std::vector<NodeId>> children;
  std::vector<std::int64_t> area;  // empty when the instance has no areas

  std::size_t size() const noexcept { return names.size(); }
  bool has_areas() const noexcept { return !area.empty(); }
  bool is_binary() const;

  // Children are ordered by child_index. When any area is given, every leaf
  // needs one; missing internal areas are filled with the sum of children.
  static PlainTree build(const std::vector<TreeNodeSpec>& nodes);
  // From names (any order) and per-node ordered child lists.
  static PlainTree from_children(std::vector<std::string> names, std::vector<std::vector<NodeId>> children,
                                 std::vector<std::int64_t> area = {});
};

// Nodes in depth-first, left-to-right order; iterative.
std::vector<NodeId> preorder(const PlainTree& tree);

struct DagEdgeSpec {
  std::string from;
  std::string to;
  std::int64_t out_rank = 1;
  std::int64_t in_rank = 1;
};

// Planar st-digraph with its embedding given by per-node edge ranks.
struct PlainDag {
  std::vector<std::string> names;
  std::vector<DagEdge> edges;  // spanning flags unset
  NodeId source = 0;
  NodeId sink = 0;
  std::vector<std::vector<std::size_t>> out_edges;  // edge indices, left to right
  std::vector<std::vector<std::size_t>> in_edges;

  std::size_t size() const noexcept { return names.size(); }
  static PlainDag build(const std::vector<DagEdgeSpec>& edges);
};

struct SpqNodeSpec {
  std::string id;
  SpqType type = SpqType::q;
  std::string parent;  // empty for the root
  std::int64_t child_index = 0;
  std::string from;  // Q only
  std::string to;
};

struct PlainSpq {
  PlainTree tree;                   // decomposition tree; names are node ids
  std::vector<SpqType> type;        // by tree NodeId
  std::vector<std::string> vertices;  // graph vertex names, sorted
  std::vector<NodeId> src;          // graph vertex per tree node
  std::vector<NodeId> snk;

  std::size_t q_count() const;
  // The series-parallel digraph with ranks from the left-to-right embedding.
  PlainDag graph() const;

  static PlainSpq build(const std::vector<SpqNodeSpec>& nodes);
};

struct Point {
  Rational x;
  Rational y;
  friend bool operator==(const Point&, const Point&) = default;
};

struct Rect {
  Rational px, py, qx, qy;
  friend bool operator==(const Rect&, const Rect&) = default;
};

// Node name to coordinates; exactly one of points/rects is filled, by NodeId.
struct Drawing {
  std::vector<std::string> names;
  std::vector<Point> points;
  std::vector<Rect> rects;

  bool is_rects() const noexcept { return !rects.empty(); }
  friend bool operator==(const Drawing&, const Drawing&) = default;
};

struct NodeValues {
  std::vector<std::string> names;
  std::vector<std::int64_t> values;
  friend bool operator==(const NodeValues&, const NodeValues&) = default;
};

// Downloaded PointRecord / RectRecord arrays (name order, one per node).
Drawing decode_points(const std::vector<std::string>& names, const std::vector<Record>& records);
Drawing decode_rects(const std::vector<std::string>& names, const std::vector<Record>& records);

}  // namespace odraw
