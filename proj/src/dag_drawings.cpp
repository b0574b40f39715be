#include "odraw/dag_drawings.hpp"

#include <algorithm>
#include <memory>

#include "odraw/euler.hpp"
#include "odraw/prims.hpp"

namespace odraw {

std::vector<Record> dominance_input(const PlainDag& dag) {
  std::vector<Record> out;
  out.reserve(dag.edges.size());
  for (const auto& e : dag.edges) out.push_back(e.encode());
  return out;
}

ServerArray mark_spanning(ScanRuntime& rt, ServerArray edges) {
  RoundSpec s;
  s.name = "dominance: mark spanning";
  s.step = [](const Record& r) {
    DagEdge e = DagEdge::decode(r);
    if (e.indegree < 1 || e.in_rank < 1 || e.in_rank > e.indegree) {
      throw Error(Errc::malformed_graph, "edge (" + std::to_string(e.from) + ", " + std::to_string(e.to) +
                                             ") has in_rank " + std::to_string(e.in_rank) + " of indegree " +
                                             std::to_string(e.indegree));
    }
    e.left_spanning = e.in_rank == 1;
    e.right_spanning = e.in_rank == e.indegree;
    return e.encode();
  };
  return rt.run(ScanProgram{s.name, {s}}, std::move(edges));
}

std::vector<TourEdge> spanning_tour(const std::vector<DagEdge>& marked, std::size_t n, Axis axis) {
  std::vector<std::vector<const DagEdge*>> out(n);
  std::vector<int> tree_in(n, 0);
  std::vector<bool> has_in(n, false);
  std::vector<std::int64_t> indegree(n, 0);
  for (const auto& e : marked) {
    if (e.from < 0 || e.to < 0 || static_cast<std::size_t>(e.from) >= n || static_cast<std::size_t>(e.to) >= n) {
      throw Error(Errc::spanning, "edge endpoint outside the node table");
    }
    has_in[e.to] = true;
    indegree[e.to] = e.indegree;
    const bool flagged = axis == Axis::x ? e.right_spanning : e.left_spanning;
    if (!flagged) continue;
    ++tree_in[e.to];
    out[e.from].push_back(&e);
  }
  NodeId root = -1;
  for (std::size_t v = 0; v < n; ++v) {
    if (!has_in[v]) {
      if (root != -1) throw Error(Errc::spanning, "more than one node without incoming edges");
      root = static_cast<NodeId>(v);
    } else if (tree_in[v] != 1) {
      throw Error(Errc::spanning, "node " + std::to_string(v) + " has " + std::to_string(tree_in[v]) +
                                      " flagged incoming edges");
    }
  }
  if (root == -1) throw Error(Errc::spanning, "no source node");
  std::vector<std::vector<NodeId>> children(n);
  for (std::size_t v = 0; v < n; ++v) {
    auto& list = out[v];
    std::sort(list.begin(), list.end(), [axis](const DagEdge* a, const DagEdge* b) {
      return axis == Axis::x ? a->out_rank < b->out_rank : a->out_rank > b->out_rank;
    });
    for (const DagEdge* e : list) children[v].push_back(e->to);
  }
  std::vector<TourEdge> tour = build_tour(root, children);
  if (tour.size() != 2 * (n - 1)) throw Error(Errc::spanning, "flagged edges do not span the digraph");
  for (auto& e : tour) e.set(Slot::indegree, indegree[e.child]);
  return tour;
}

ServerArray dominance_coordinates(ScanRuntime& rt, ServerArray tour, Axis axis, DominanceMode mode) {
  auto counter = std::make_shared<std::int64_t>(0);
  auto step = [counter, axis, mode](const TourEdge& e) -> Record {
    if (e.is_down()) {
      const bool keep = mode == DominanceMode::compressed && e.child_num == 1 && e.get(Slot::indegree) > 1;
      if (!keep) ++*counter;
      return CoordTuple{e.child, *counter, axis}.encode();
    }
    // The closing edge's slot carries the source tuple.
    return e.next == 0 ? CoordTuple{e.parent, 0, axis}.encode() : Record::dummy();
  };
  return traverse(rt, std::move(tour), step, 1);
}

ServerArray finalize_dominance(ScanRuntime& rt, ServerArray xs, ServerArray ys, std::size_t n) {
  ServerArray both = ScanRuntime::concat(std::move(xs), ys);
  struct Held {
    bool have = false;
    CoordTuple x;
  };
  auto held = std::make_shared<Held>();
  RoundSpec s;
  s.name = "dominance: pair axes";
  s.prepare = Prepare::sort;
  s.sort_key = [](const Record& r) -> SortKey {
    if (r.is_dummy()) return {kDummyName, 0, 0, 0};
    const CoordTuple t = CoordTuple::decode(r);
    return {t.node, static_cast<std::int64_t>(t.axis), 0, 0};
  };
  s.state_words = 3;
  s.step = [held](const Record& r) -> Record {
    if (r.is_dummy()) return Record::dummy();
    const CoordTuple t = CoordTuple::decode(r);
    if (t.axis == Axis::x) {
      if (held->have) {
        throw Error(Errc::incomplete_drawing, "node " + std::to_string(held->x.node) + " has no y coordinate");
      }
      held->have = true;
      held->x = t;
      return Record::dummy();
    }
    if (!held->have || held->x.node != t.node) {
      throw Error(Errc::incomplete_drawing, "node " + std::to_string(t.node) + " has no x coordinate");
    }
    held->have = false;
    return PointRecord{t.node, Rational(held->x.value), Rational(t.value)}.encode();
  };
  ServerArray paired = rt.run(ScanProgram{s.name, {s}}, std::move(both));
  if (held->have) {
    throw Error(Errc::incomplete_drawing, "node " + std::to_string(held->x.node) + " has no y coordinate");
  }
  return ScanRuntime::truncate(oblivious_compact(rt, std::move(paired)), n);
}

Drawing run_dominance(const PlainDag& dag, DominanceMode mode, const RuntimeConfig& config, TraceLog* trace) {
  ScanRuntime rt(config);
  const std::size_t n = dag.size();
  ServerArray marked = mark_spanning(rt, rt.upload(dominance_input(dag)));
  std::vector<DagEdge> edges;
  for (const auto& r : rt.download(marked)) edges.push_back(DagEdge::decode(r));
  ServerArray xs = dominance_coordinates(rt, rt.upload(encode_all(spanning_tour(edges, n, Axis::x))), Axis::x, mode);
  ServerArray ys = dominance_coordinates(rt, rt.upload(encode_all(spanning_tour(edges, n, Axis::y))), Axis::y, mode);
  ServerArray out = finalize_dominance(rt, std::move(xs), std::move(ys), n);
  Drawing d = decode_points(dag.names, rt.download(out));
  if (trace) *trace = rt.take_trace();
  return d;
}

std::vector<Record> spq_input(const PlainSpq& spq) {
  const PlainTree& t = spq.tree;
  // A virtual parent above the root gives the root an edge pair of its own.
  const auto virtual_parent = static_cast<NodeId>(t.size());
  auto children = t.children;
  children.push_back({t.root});
  auto tour = build_tour(virtual_parent, children);
  for (auto& e : tour) {
    const bool top = e.parent == virtual_parent;
    e.set(Slot::parent_spq, top ? static_cast<std::int64_t>(SpqType::s) : static_cast<std::int64_t>(spq.type[e.parent]));
    e.set(Slot::child_spq, static_cast<std::int64_t>(spq.type[e.child]));
    e.set(Slot::src, spq.src[e.child]);
    e.set(Slot::snk, spq.snk[e.child]);
    e.set(Slot::at_root, top ? 1 : 0);
  }
  return encode_all(tour);
}

namespace {

SpqType parent_type(const TourEdge& e) { return static_cast<SpqType>(e.get(Slot::parent_spq)); }
SpqType child_type(const TourEdge& e) { return static_cast<SpqType>(e.get(Slot::child_spq)); }
bool is_virtual(const TourEdge& e) { return e.get(Slot::at_root) == 1; }

void check_spq_shape(const TourEdge& e) {
  if (is_virtual(e)) return;
  const SpqType p = parent_type(e);
  if (p == SpqType::q) throw Error(Errc::malformed_spq, "Q node " + std::to_string(e.parent) + " has children");
  if (e.parent_outdeg != 2) {
    throw Error(Errc::malformed_spq, std::string(p == SpqType::s ? "S" : "P") + " node " +
                                         std::to_string(e.parent) + " has " + std::to_string(e.parent_outdeg) +
                                         " children, expected 2");
  }
}

}  // namespace

ServerArray spq_stamp(ScanRuntime& rt, ServerArray tour) {
  // stamp: Q leaves closed so far. level: number of "second child of an S
  // node" steps from the root.
  struct Walk {
    std::int64_t closed = 0;
    std::int64_t level = 0;
  };
  auto walk = std::make_shared<Walk>();
  ServerArray stamped = traverse(
      rt, std::move(tour),
      [walk](const TourEdge& e) {
        check_spq_shape(e);
        Walk& w = *walk;
        TourEdge out = e;
        const bool deeper = !is_virtual(e) && parent_type(e) == SpqType::s && e.child_num == 2;
        if (e.is_down() && deeper) ++w.level;
        out.set(Slot::level, w.level);
        if (!e.is_down() && deeper) --w.level;
        if (!e.is_down() && child_type(e) == SpqType::q) w.closed += 2;
        out.set(Slot::stamp, w.closed);
        return out.encode();
      },
      2);

  struct Count {
    bool have = false;
    std::int64_t level = 0;
    std::int64_t count = 0;
  };
  auto cnt = std::make_shared<Count>();
  RoundSpec s;
  s.name = "delta: level scan";
  s.prepare = Prepare::sort;
  s.sort_key = [](const Record& r) -> SortKey {
    const TourEdge e = TourEdge::decode(r);
    return {e.get(Slot::level), e.tag, 0, 0};
  };
  s.state_words = 3;
  s.step = [cnt](const Record& r) {
    TourEdge e = TourEdge::decode(r);
    const std::int64_t lv = e.get(Slot::level);
    if (!cnt->have || cnt->level != lv) {
      cnt->have = true;
      cnt->level = lv;
      cnt->count = 0;
    }
    e.set(Slot::b_prime, cnt->count);
    if (e.is_down() && child_type(e) == SpqType::q) cnt->count += 2;
    e.clear(Slot::level);
    return e.encode();
  };
  return rt.run(ScanProgram{s.name, {s}}, std::move(stamped));
}

ServerArray spq_child_values(ScanRuntime& rt, ServerArray stamped, std::size_t n) {
  PairSpec pair;
  pair.name = "delta: child values";
  pair.on_up = [](const TourEdge&) { return Record::dummy(); };
  pair.on_down = [](const TourEdge& up, const TourEdge& down) {
    KeyedValue kv;
    kv.key1 = down.parent;
    kv.key2 = down.child_num;
    kv.count = 3;
    kv.values = {up.get(Slot::stamp) - down.get(Slot::stamp), up.get(Slot::b_prime) - down.get(Slot::b_prime),
                 down.get(Slot::snk)};
    return kv.encode();
  };
  return ScanRuntime::truncate(oblivious_compact(rt, pair_scan(rt, std::move(stamped), pair)), n);
}

ServerArray spq_attach_siblings(ScanRuntime& rt, ServerArray stamped) {
  // Forward over each parent's edges, child by child: the second child's
  // copies learn the first child's values. Backward: the reverse.
  struct Forward {
    NodeId parent = -1;
    std::int64_t up_stamp = 0;
    std::int64_t up_level = 0;
    std::int64_t b = 0;
    std::int64_t b_prime = 0;
    std::int64_t snk = 0;
  };
  auto fw = std::make_shared<Forward>();
  RoundSpec forward;
  forward.name = "delta: first sibling";
  forward.prepare = Prepare::sort;
  forward.sort_key = [](const Record& r) -> SortKey {
    const TourEdge e = TourEdge::decode(r);
    return {e.parent, e.child_num, e.is_down() ? 1 : 0, 0};
  };
  forward.state_words = 6;
  forward.step = [fw](const Record& r) {
    TourEdge e = TourEdge::decode(r);
    Forward& f = *fw;
    const bool second = !is_virtual(e) && e.child_num == 2;
    if (second) {
      e.set(Slot::sibling_b, f.b);
      e.set(Slot::sibling_b_prime, f.b_prime);
    }
    if (!e.is_down()) {
      f.parent = e.parent;
      f.up_stamp = e.get(Slot::stamp);
      f.up_level = e.get(Slot::b_prime);
      e.clear(Slot::stamp);
      e.clear(Slot::b_prime);
      if (!is_virtual(e)) {
        e.clear(Slot::src);
        e.clear(Slot::snk);
      }
      return e.encode();
    }
    if (e.parent != f.parent) throw Error(Errc::malformed_tour, "down copy without its up copy");
    const std::int64_t b = f.up_stamp - e.get(Slot::stamp);
    const std::int64_t b_prime = f.up_level - e.get(Slot::b_prime);
    const bool series = parent_type(e) == SpqType::s;
    if (second && series && f.snk != e.get(Slot::src)) {
      throw Error(Errc::malformed_spq, "S node " + std::to_string(e.parent) + ": children share no join vertex");
    }
    f.b = b;
    f.b_prime = b_prime;
    f.snk = e.get(Slot::snk);
    e.clear(Slot::stamp);
    e.clear(Slot::b_prime);
    if (second) {
      e.set(Slot::b, b);
      e.set(Slot::b_prime, b_prime);
    }
    if (!is_virtual(e)) {
      e.clear(Slot::snk);
      // Only the join vertex of a series composition is placed from here.
      if (!(second && series)) e.clear(Slot::src);
    }
    return e.encode();
  };

  struct Backward {
    std::int64_t b = 0;
    std::int64_t b_prime = 0;
  };
  auto bw = std::make_shared<Backward>();
  RoundSpec backward;
  backward.name = "delta: second sibling";
  backward.prepare = Prepare::sort;
  backward.sort_key = [](const Record& r) -> SortKey {
    const TourEdge e = TourEdge::decode(r);
    return {e.parent, -e.child_num, e.is_down() ? 0 : 1, 0};
  };
  backward.state_words = 2;
  backward.step = [bw](const Record& r) {
    TourEdge e = TourEdge::decode(r);
    Backward& b = *bw;
    if (is_virtual(e)) return e.encode();
    if (e.child_num == 2) {
      if (e.is_down()) {
        b.b = e.get(Slot::b);
        b.b_prime = e.get(Slot::b_prime);
        e.clear(Slot::b);
        e.clear(Slot::b_prime);
      }
      return e.encode();
    }
    e.set(Slot::sibling_b, b.b);
    e.set(Slot::sibling_b_prime, b.b_prime);
    return e.encode();
  };
  ServerArray first = rt.run(ScanProgram{forward.name, {forward}}, std::move(stamped));
  return rt.run(ScanProgram{backward.name, {backward}}, std::move(first));
}

ServerArray spq_place(ScanRuntime& rt, ServerArray tour, std::size_t vertices) {
  struct Apex {
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::int64_t closed = 0;
  };
  auto apex = std::make_shared<Apex>();
  auto point = [](NodeId v, std::int64_t x, std::int64_t y) {
    return PointRecord{v, Rational(x), Rational(y)}.encode();
  };
  auto step = [apex, point](const TourEdge& e) -> Record {
    Apex& a = *apex;
    if (!e.is_down() && child_type(e) == SpqType::q) a.closed += 2;
    if (is_virtual(e)) {
      // The root's terminals: source at the origin, sink above it at height b.
      return e.is_down() ? point(e.get(Slot::src), 0, 0) : point(e.get(Slot::snk), 0, a.closed);
    }
    const SpqType p = parent_type(e);
    const bool first = e.child_num == 1;
    const std::int64_t sib_b = e.get(Slot::sibling_b);
    if (e.is_down()) {
      if (p == SpqType::p) {
        if (first) {
          a.x -= sib_b / 2;
          a.y += sib_b / 2;
        } else {
          a.y += e.get(Slot::sibling_b_prime);
        }
        return Record::dummy();
      }
      if (first) return Record::dummy();
      a.y += sib_b;
      // Join vertex of a series composition sits at the second child's apex.
      return point(e.get(Slot::src), a.x, a.y);
    }
    if (p == SpqType::p) {
      if (first) {
        a.x += sib_b / 2;
        a.y -= sib_b / 2;
      } else {
        a.y -= e.get(Slot::sibling_b_prime);
      }
    } else if (!first) {
      a.y -= sib_b;
    }
    return Record::dummy();
  };
  ServerArray points = traverse(rt, std::move(tour), step, 3);
  return ScanRuntime::truncate(oblivious_compact(rt, std::move(points)), vertices);
}

Drawing run_delta(const PlainSpq& spq, const RuntimeConfig& config, TraceLog* trace) {
  ScanRuntime rt(config);
  ServerArray arr = spq_attach_siblings(rt, spq_stamp(rt, rt.upload(spq_input(spq))));
  ServerArray out = spq_place(rt, std::move(arr), spq.vertices.size());
  Drawing d = decode_points(spq.vertices, rt.download(out));
  if (trace) *trace = rt.take_trace();
  return d;
}

DeltaSizes run_delta_sizes(const PlainSpq& spq, const RuntimeConfig& config) {
  ScanRuntime rt(config);
  const PlainTree& t = spq.tree;
  const std::size_t n = t.size();
  const auto records = rt.download(spq_child_values(rt, spq_stamp(rt, rt.upload(spq_input(spq))), n));
  DeltaSizes s;
  s.b.assign(n, 0);
  s.b_prime.assign(n, 0);
  for (const Record& r : records) {
    const KeyedValue kv = KeyedValue::decode(r);
    const auto parent = static_cast<std::size_t>(kv.key1);
    const NodeId child = parent == n ? t.root : t.children.at(parent).at(static_cast<std::size_t>(kv.key2 - 1));
    s.b[static_cast<std::size_t>(child)] = kv.values[0];
    s.b_prime[static_cast<std::size_t>(child)] = kv.values[1];
  }
  return s;
}

}  // namespace odraw
