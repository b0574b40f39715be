#include "odraw/tree_drawings.hpp"

#include <array>
#include <memory>

#include "odraw/euler.hpp"
#include "odraw/prims.hpp"

namespace odraw {

std::size_t ceil_log2(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

std::vector<Record> treemap_input(const PlainTree& tree) {
  if (!tree.has_areas()) throw Error(Errc::degenerate_input, "treemap needs node areas");
  if (tree.size() == 1) return {root_marker(tree.root)};
  auto tour = build_euler_tour(tree);
  for (auto& e : tour) {
    e.set(Slot::parent_area, tree.area[e.parent]);
    e.set(Slot::child_area, tree.area[e.child]);
  }
  return encode_all(tour);
}

namespace {

Record rect_record(NodeId node, const Rational& px, const Rational& py, const Rational& qx, const Rational& qy) {
  return RectRecord{node, px, py, qx, qy}.encode();
}

Record point_record(NodeId node, const Rational& x, const Rational& y) { return PointRecord{node, x, y}.encode(); }

}  // namespace

ServerArray treemap_layout(ScanRuntime& rt, ServerArray tour, std::size_t n, const Rational& width,
                           const Rational& height) {
  if (width <= Rational(0) || height <= Rational(0)) {
    throw Error(Errc::degenerate_input, "treemap rectangle must have positive size");
  }
  if (n == 1) {
    return single_node_round(rt, std::move(tour), "treemap",
                             [=](NodeId r) { return rect_record(r, 0, 0, width, height); });
  }
  struct State {
    bool started = false;
    std::array<Rational, 2> p;
    std::array<Rational, 2> q;
    Rational unit;
    int axis = 0;
  };
  auto st = std::make_shared<State>();
  auto step = [st, width, height](const TourEdge& e) -> Record {
    State& s = *st;
    const Rational parent_area(e.get(Slot::parent_area));
    const Rational child_area(e.get(Slot::child_area));
    if (child_area <= Rational(0)) throw Error(Errc::degenerate_input, "zero area on a tree edge");
    if (!s.started) {
      s.started = true;
      s.p = {Rational(0), Rational(0)};
      s.q = {width, height};
      s.axis = 0;
      s.unit = width / parent_area;
    }
    const int a = s.axis;
    if (e.is_down()) {
      s.q[a] = s.p[a] + s.unit * child_area;
      const Record out = rect_record(e.child, s.p[0], s.p[1], s.q[0], s.q[1]);
      if (e.child_outdeg == 0) {
        if (e.child_num < e.parent_outdeg) s.p[a] = s.q[a];
      } else {
        s.unit = (s.q[1 - a] - s.p[1 - a]) / child_area;
        s.axis = 1 - a;
      }
      return out;
    }
    if (e.child_num == e.parent_outdeg) {
      // Leaving the parent's slice: restore the grandparent's scale and cursor.
      const Rational branch = s.unit * parent_area;
      s.unit = (s.q[1 - a] - s.p[1 - a]) / parent_area;
      s.p[a] = s.q[a] - branch;
      s.p[1 - a] = s.q[1 - a];
      s.axis = 1 - a;
    }
    return e.next == 0 ? rect_record(e.parent, 0, 0, width, height) : Record::dummy();
  };
  ServerArray rects = traverse(rt, std::move(tour), step, 7);
  return ScanRuntime::truncate(oblivious_compact(rt, std::move(rects)), n);
}

Drawing run_treemap(const PlainTree& tree, const Rational& width, const Rational& height,
                    const RuntimeConfig& config, TraceLog* trace) {
  ScanRuntime rt(config);
  const auto input = treemap_input(tree);
  ServerArray out = treemap_layout(rt, rt.upload(input), tree.size(), width, height);
  Drawing d = decode_rects(tree.names, rt.download(out));
  if (trace) *trace = rt.take_trace();
  return d;
}

namespace {

void check_binary(const TourEdge& e) {
  if (e.parent_outdeg > 2) {
    throw Error(Errc::arity, "node " + std::to_string(e.parent) + " has " + std::to_string(e.parent_outdeg) +
                                 " children; bounding-rectangle drawing needs a binary tree");
  }
}

bool is_solid_edge(const TourEdge& e) {
  if (e.parent_outdeg != 2) return true;
  const std::int64_t mine = e.get(Slot::subsize);
  const std::int64_t sibling = e.get(Slot::parent_subsize) - 1 - mine;
  return mine > sibling || (mine == sibling && e.child_num == 2);
}

}  // namespace

ServerArray brect_annotate(ScanRuntime& rt, ServerArray tour, std::size_t n) {
  (void)n;
  // Both copies of an edge are 2 x size - 1 tags apart. The first pass sees
  // a parent's edges child by child and leaves the size on every down copy
  // and the parent's size on the last child's down copy; the second pass
  // walks the same groups backwards and fills in the rest.
  struct Forward {
    NodeId parent = -1;
    std::int64_t up_tag = 0;
    std::int64_t first_size = 0;
  };
  auto fw = std::make_shared<Forward>();
  RoundSpec forward;
  forward.name = "brect: sizes";
  forward.prepare = Prepare::sort;
  forward.sort_key = [](const Record& r) -> SortKey {
    const TourEdge e = TourEdge::decode(r);
    return {e.parent, e.child_num, e.is_down() ? 1 : 0, 0};
  };
  forward.state_words = 3;
  forward.step = [fw](const Record& r) {
    TourEdge e = TourEdge::decode(r);
    check_binary(e);
    Forward& f = *fw;
    if (!e.is_down()) {
      if (e.parent != f.parent) {
        f.parent = e.parent;
        f.first_size = 0;
      }
      f.up_tag = e.tag;
      return e.encode();
    }
    const std::int64_t size = (f.up_tag - e.tag + 1) / 2;
    e.set(Slot::subsize, size);
    if (e.child_num == e.parent_outdeg) e.set(Slot::parent_subsize, size + f.first_size + 1);
    f.first_size = size;
    return e.encode();
  };

  struct Backward {
    NodeId parent = -1;
    std::int64_t parent_size = 0;
    std::int64_t size = 0;
  };
  auto bw = std::make_shared<Backward>();
  RoundSpec backward;
  backward.name = "brect: sibling sizes";
  backward.prepare = Prepare::sort;
  backward.sort_key = [](const Record& r) -> SortKey {
    const TourEdge e = TourEdge::decode(r);
    return {e.parent, -e.child_num, e.is_down() ? 0 : 1, 0};
  };
  backward.state_words = 3;
  backward.step = [bw](const Record& r) {
    TourEdge e = TourEdge::decode(r);
    Backward& b = *bw;
    if (e.is_down()) {
      if (e.parent != b.parent) {
        b.parent = e.parent;
        b.parent_size = e.get(Slot::parent_subsize);
      }
      e.set(Slot::parent_subsize, b.parent_size);
      b.size = e.get(Slot::subsize);
    } else {
      e.set(Slot::subsize, b.size);
      e.set(Slot::parent_subsize, b.parent_size);
    }
    e.set(Slot::is_solid, is_solid_edge(e) ? 1 : 0);
    return e.encode();
  };
  ServerArray sized = rt.run(ScanProgram{forward.name, {forward}}, std::move(tour));
  return rt.run(ScanProgram{backward.name, {backward}}, std::move(sized));
}

ServerArray brect_widths(ScanRuntime& rt, ServerArray tour, std::size_t n) {
  auto value = [](NodeId node, std::int64_t v) {
    KeyedValue kv;
    kv.key1 = node;
    kv.values[0] = v;
    return kv.encode();
  };
  if (n == 1) return single_node_round(rt, std::move(tour), "brect widths", [&](NodeId r) { return value(r, 2); });
  auto leaves = std::make_shared<std::int64_t>(0);
  ServerArray stamped = traverse(
      rt, std::move(tour),
      [leaves](const TourEdge& e) {
        TourEdge out = e;
        out.set(Slot::stamp, *leaves);
        if (e.is_down() && e.child_outdeg == 0) ++*leaves;
        return out.encode();
      },
      1);
  PairSpec pair;
  pair.name = "brect widths: pair";
  pair.on_up = [&](const TourEdge& up) {
    return up.next == 0 ? value(up.parent, 2 * up.get(Slot::stamp)) : Record::dummy();
  };
  pair.on_down = [&](const TourEdge& up, const TourEdge& down) {
    return value(down.child, 2 * (up.get(Slot::stamp) - down.get(Slot::stamp)));
  };
  return ScanRuntime::truncate(oblivious_compact(rt, pair_scan(rt, std::move(stamped), pair)), n);
}

ServerArray solid_first_order(ScanRuntime& rt, ServerArray marked) {
  struct State {
    std::int64_t path = 0;   // preorder index of the current node in the new order
    std::int64_t depth = 0;
    std::int64_t total = 0;  // number of tour edges
    std::int64_t leaves = 0;
  };
  auto st = std::make_shared<State>();
  st->total = static_cast<std::int64_t>(marked.size());
  auto step = [st](const TourEdge& e) {
    State& s = *st;
    const std::int64_t size = e.get(Slot::subsize);
    const bool dashed = e.get(Slot::is_solid) == 0;
    const std::int64_t contrib = 1 + (dashed ? e.get(Slot::parent_subsize) - 1 - size : 0);
    TourEdge out = e;
    if (e.is_down()) {
      if (e.child_outdeg == 0) out.set(Slot::refx, 2 * s.leaves++);
      s.path += contrib;
      s.depth += 1;
      out.tag = 2 * s.path - s.depth - 1;
    } else {
      out.tag = 2 * s.path - s.depth - 1 + 2 * size - 1;
      s.path -= contrib;
      s.depth -= 1;
    }
    out.next = (out.tag + 1) % s.total;
    return out.encode();
  };
  return traverse(rt, std::move(marked), step, 4);
}

std::size_t brect_stack_bound(std::size_t n) { return ceil_log2(n) + 1; }

std::size_t brect_workspace_budget(std::size_t n) { return 4 * ceil_log2(n) + 32; }

ServerArray brect_assign_xy(ScanRuntime& rt, ServerArray reordered, std::size_t n, std::size_t* stack_peak) {
  if (stack_peak) *stack_peak = 0;
  if (n == 1) {
    return single_node_round(rt, std::move(reordered), "brect", [](NodeId r) { return point_record(r, 1, 0); });
  }
  constexpr std::size_t kEntryWords = 2;
  struct State {
    Rational x;
    std::int64_t y = 0;
    std::vector<std::pair<Rational, std::int64_t>> stack;
    std::size_t peak = 0;
  };
  auto st = std::make_shared<State>();
  const std::size_t bound = brect_stack_bound(n);
  Workspace& ws = rt.workspace();
  auto step = [st, bound, &ws](const TourEdge& e) -> Record {
    State& s = *st;
    const bool solid = e.get(Slot::is_solid) != 0;
    if (e.is_down()) {
      if (!solid) {
        if (s.stack.size() + 1 > bound) {
          throw Error(Errc::invariant_violation, "coordinate stack exceeds " + std::to_string(bound) +
                                                     " entries; dashed/solid decomposition is broken");
        }
        ws.charge(kEntryWords);
        s.stack.emplace_back(s.x, s.y);
        s.peak = std::max(s.peak, s.stack.size());
      }
      if (e.child_outdeg == 0) {
        s.x = Rational(e.get(Slot::refx) + 1);
        s.y = 0;
        return point_record(e.child, s.x, Rational(s.y));
      }
      return Record::dummy();
    }
    const bool last_visited = e.parent_outdeg == 1 || !solid;
    if (!last_visited) return Record::dummy();
    if (e.parent_outdeg == 1) {
      s.y += 1;
    } else {
      if (s.stack.empty()) throw Error(Errc::invariant_violation, "coordinate stack underflow");
      const auto [sx, sy] = s.stack.back();
      s.stack.pop_back();
      ws.release(kEntryWords);
      s.x = (sx + s.x) / Rational(2);
      s.y = 1 + std::max(sy, s.y);
    }
    return point_record(e.parent, s.x, Rational(s.y));
  };
  ServerArray points = traverse(rt, std::move(reordered), step, 3);
  if (stack_peak) *stack_peak = st->peak;
  return ScanRuntime::truncate(oblivious_compact(rt, std::move(points)), n);
}

Drawing run_brect(const PlainTree& tree, const RuntimeConfig& config, TraceLog* trace, std::size_t* stack_peak) {
  if (!tree.is_binary()) throw Error(Errc::arity, "bounding-rectangle drawing needs a binary tree");
  ScanRuntime rt(config);
  const std::size_t n = tree.size();
  ServerArray arr = rt.upload(tour_input(tree));
  if (n > 1) {
    arr = brect_annotate(rt, std::move(arr), n);
    arr = solid_first_order(rt, std::move(arr));
  }
  ServerArray out = brect_assign_xy(rt, std::move(arr), n, stack_peak);
  Drawing d = decode_points(tree.names, rt.download(out));
  if (trace) *trace = rt.take_trace();
  return d;
}

}  // namespace odraw
