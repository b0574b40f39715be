#include "odraw/euler.hpp"

#include <memory>

#include "odraw/prims.hpp"

namespace odraw {

std::vector<TourEdge> build_tour(NodeId root, const std::vector<std::vector<NodeId>>& children) {
  std::vector<TourEdge> tour;
  struct Frame {
    NodeId node;
    std::size_t next;
  };
  std::vector<Frame> stack{{root, 0}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& kids = children.at(f.node);
    if (f.next == kids.size()) {
      stack.pop_back();
      if (!stack.empty()) {
        const NodeId p = stack.back().node;
        TourEdge up;
        up.direction = Direction::up;
        up.parent = p;
        up.child = f.node;
        up.child_num = static_cast<std::int64_t>(stack.back().next);
        up.parent_outdeg = static_cast<std::int64_t>(children[p].size());
        up.child_outdeg = static_cast<std::int64_t>(kids.size());
        tour.push_back(up);
      }
      continue;
    }
    const NodeId c = kids[f.next++];
    TourEdge down;
    down.parent = f.node;
    down.child = c;
    down.child_num = static_cast<std::int64_t>(f.next);
    down.parent_outdeg = static_cast<std::int64_t>(kids.size());
    down.child_outdeg = static_cast<std::int64_t>(children.at(c).size());
    tour.push_back(down);
    if (tour.size() > 2 * children.size()) throw Error(Errc::not_a_tree, "children lists contain a cycle");
    stack.push_back({c, 0});
  }
  const auto m = static_cast<std::int64_t>(tour.size());
  for (std::int64_t i = 0; i < m; ++i) {
    tour[i].tag = i;
    tour[i].next = (i + 1) % m;
  }
  return tour;
}

std::vector<TourEdge> build_euler_tour(const PlainTree& tree) { return build_tour(tree.root, tree.children); }

std::vector<Record> encode_all(const std::vector<TourEdge>& tour) {
  std::vector<Record> out;
  out.reserve(tour.size());
  for (const auto& e : tour) out.push_back(e.encode());
  return out;
}

Record root_marker(NodeId root) {
  KeyedValue kv;
  kv.key1 = root;
  kv.count = 0;
  return kv.encode();
}

std::vector<Record> tour_input(const PlainTree& tree) {
  if (tree.size() == 1) return {root_marker(tree.root)};
  return encode_all(build_euler_tour(tree));
}

RoundSpec tour_round(std::string name, std::size_t state_words, std::function<Record(const TourEdge&)> step) {
  RoundSpec s;
  s.name = std::move(name);
  s.prepare = Prepare::shuffle_by_tag;
  s.tag_of = tour_tag;
  s.order = ScanOrder::tour;
  s.next_tag = tour_next;
  s.state_words = state_words;
  s.step = [step = std::move(step)](const Record& r) { return step(TourEdge::decode(r)); };
  return s;
}

ServerArray traverse(ScanRuntime& rt, ServerArray tour, std::function<Record(const TourEdge&)> visitor,
                     std::size_t state_words) {
  ScanProgram p{"traverse", {tour_round("traverse", state_words, std::move(visitor))}};
  return rt.run(p, std::move(tour));
}

ServerArray pair_scan(ScanRuntime& rt, ServerArray tour, const PairSpec& spec) {
  auto held = std::make_shared<std::optional<TourEdge>>();
  RoundSpec s;
  s.name = spec.name;
  s.prepare = Prepare::sort;
  s.sort_key = [](const Record& r) -> SortKey {
    const TourEdge e = TourEdge::decode(r);
    return {e.parent, e.child, e.is_down() ? 1 : 0, 0};
  };
  s.state_words = spec.state_words;
  s.step = [held, &spec](const Record& r) -> Record {
    const TourEdge e = TourEdge::decode(r);
    if (!e.is_down()) {
      if (held->has_value()) {
        throw Error(Errc::malformed_tour, spec.name + ": up copy of edge (" + std::to_string(e.parent) + ", " +
                                              std::to_string(e.child) + ") follows an unmatched up copy");
      }
      *held = e;
      return spec.on_up(e);
    }
    if (!held->has_value() || (*held)->parent != e.parent || (*held)->child != e.child) {
      throw Error(Errc::malformed_tour, spec.name + ": down copy of edge (" + std::to_string(e.parent) + ", " +
                                            std::to_string(e.child) + ") has no matching up copy");
    }
    const TourEdge up = **held;
    held->reset();
    return spec.on_down(up, e);
  };
  ServerArray out = rt.run(ScanProgram{spec.name, {s}}, std::move(tour));
  if (held->has_value()) throw Error(Errc::malformed_tour, spec.name + ": trailing unmatched edge copy");
  return out;
}

ServerArray single_node_round(ScanRuntime& rt, ServerArray marker, std::string name,
                              std::function<Record(NodeId root)> emit) {
  if (marker.size() != 1) throw Error(Errc::malformed_tour, name + ": expected a single root marker");
  RoundSpec s;
  s.name = name;
  s.state_words = 0;
  s.step = [emit = std::move(emit)](const Record& r) {
    return emit(KeyedValue::decode(r).key1);
  };
  return rt.run(ScanProgram{std::move(name), {s}}, std::move(marker));
}

namespace {

Record node_value(NodeId node, std::int64_t value) {
  KeyedValue kv;
  kv.key1 = node;
  kv.values[0] = value;
  return kv.encode();
}

ServerArray finish_values(ScanRuntime& rt, ServerArray values, std::size_t n) {
  return ScanRuntime::truncate(oblivious_compact(rt, std::move(values)), n);
}

}  // namespace

ServerArray subtree_sizes(ScanRuntime& rt, ServerArray tour, std::size_t n) {
  if (n == 1) {
    return single_node_round(rt, std::move(tour), "subtree sizes", [](NodeId r) { return node_value(r, 1); });
  }
  auto counter = std::make_shared<std::int64_t>(0);
  ServerArray stamped = traverse(
      rt, std::move(tour),
      [counter](const TourEdge& e) {
        TourEdge out = e;
        if (!e.is_down()) ++*counter;
        out.set(Slot::stamp, *counter);
        return out.encode();
      },
      1);
  PairSpec pair;
  pair.name = "subtree sizes: pair";
  pair.on_up = [](const TourEdge& up) {
    // The root's last up edge closes the tour; its stamp counts every edge.
    return up.next == 0 ? node_value(up.parent, up.get(Slot::stamp) + 1) : Record::dummy();
  };
  pair.on_down = [](const TourEdge& up, const TourEdge& down) {
    return node_value(down.child, up.get(Slot::stamp) - down.get(Slot::stamp));
  };
  return finish_values(rt, pair_scan(rt, std::move(stamped), pair), n);
}

ServerArray node_depths(ScanRuntime& rt, ServerArray tour, std::size_t n) {
  if (n == 1) {
    return single_node_round(rt, std::move(tour), "node depths", [](NodeId r) { return node_value(r, 0); });
  }
  auto depth = std::make_shared<std::int64_t>(0);
  ServerArray stamped = traverse(
      rt, std::move(tour),
      [depth](const TourEdge& e) {
        TourEdge out = e;
        if (e.is_down()) {
          ++*depth;
          out.set(Slot::depth, *depth);
        } else {
          --*depth;
        }
        return out.encode();
      },
      1);
  PairSpec pair;
  pair.name = "node depths: pair";
  pair.on_up = [](const TourEdge& up) { return up.next == 0 ? node_value(up.parent, 0) : Record::dummy(); };
  pair.on_down = [](const TourEdge&, const TourEdge& down) {
    return node_value(down.child, down.get(Slot::depth));
  };
  return finish_values(rt, pair_scan(rt, std::move(stamped), pair), n);
}

NodeValues decode_values(const std::vector<std::string>& names, const std::vector<Record>& records) {
  NodeValues nv;
  nv.names = names;
  nv.values.assign(names.size(), 0);
  if (records.size() != names.size()) {
    throw Error(Errc::incomplete_drawing, "expected " + std::to_string(names.size()) + " values, got " +
                                              std::to_string(records.size()));
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].is_dummy()) throw Error(Errc::incomplete_drawing, "missing value for '" + names[i] + "'");
    const KeyedValue kv = KeyedValue::decode(records[i]);
    if (kv.key1 != static_cast<NodeId>(i)) {
      throw Error(Errc::incomplete_drawing, "value for '" + names[i] + "' missing or duplicated");
    }
    nv.values[i] = kv.values[0];
  }
  return nv;
}

namespace {

NodeValues run_values(const PlainTree& tree, const RuntimeConfig& config, TraceLog* trace,
                      ServerArray (*program)(ScanRuntime&, ServerArray, std::size_t)) {
  ScanRuntime rt(config);
  const auto input = tour_input(tree);
  ServerArray out = program(rt, rt.upload(input), tree.size());
  NodeValues nv = decode_values(tree.names, rt.download(out));
  if (trace) *trace = rt.take_trace();
  return nv;
}

}  // namespace

NodeValues run_subtree_sizes(const PlainTree& tree, const RuntimeConfig& config, TraceLog* trace) {
  return run_values(tree, config, trace, subtree_sizes);
}

NodeValues run_node_depths(const PlainTree& tree, const RuntimeConfig& config, TraceLog* trace) {
  return run_values(tree, config, trace, node_depths);
}

}  // namespace odraw
