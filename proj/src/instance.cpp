#include "odraw/instance.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace odraw {

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Fills parent/root from children and checks that the result is one tree.
void finish_tree(PlainTree& t) {
  const std::size_t n = t.names.size();
  if (n == 0) throw Error(Errc::not_a_tree, "tree has no nodes");
  t.parent.assign(n, -1);
  for (std::size_t p = 0; p < n; ++p) {
    for (NodeId c : t.children[p]) {
      if (c < 0 || static_cast<std::size_t>(c) >= n) throw Error(Errc::not_a_tree, "child id out of range");
      if (t.parent[c] != -1 || c == static_cast<NodeId>(p)) {
        throw Error(Errc::not_a_tree, "node '" + t.names[c] + "' has more than one parent");
      }
      t.parent[c] = static_cast<NodeId>(p);
    }
  }
  std::vector<NodeId> roots;
  for (std::size_t v = 0; v < n; ++v) {
    if (t.parent[v] == -1) roots.push_back(static_cast<NodeId>(v));
  }
  if (roots.size() != 1) {
    throw Error(Errc::not_a_tree, "expected exactly one root, found " + std::to_string(roots.size()));
  }
  t.root = roots[0];
  std::size_t seen = 0;
  std::vector<NodeId> stack{t.root};
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    ++seen;
    for (NodeId c : t.children[v]) stack.push_back(c);
  }
  if (seen != n) throw Error(Errc::not_a_tree, "nodes not reachable from the root (cycle)");
}

void resolve_areas(PlainTree& t, const std::vector<std::optional<std::int64_t>>& given) {
  const bool any = std::any_of(given.begin(), given.end(), [](const auto& a) { return a.has_value(); });
  if (!any) {
    t.area.clear();
    return;
  }
  t.area.assign(t.size(), 0);
  const auto order = preorder(t);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId v = *it;
    const auto& name = t.names[v];
    if (given[v] && *given[v] <= 0) {
      throw Error(Errc::degenerate_input, "node '" + name + "' has non-positive area");
    }
    if (t.children[v].empty()) {
      if (!given[v]) throw Error(Errc::degenerate_input, "leaf '" + name + "' has no area");
      t.area[v] = *given[v];
      continue;
    }
    std::int64_t sum = 0;
    for (NodeId c : t.children[v]) {
      if (__builtin_add_overflow(sum, t.area[c], &sum)) throw Error(Errc::overflow, "area sum overflows");
    }
    if (given[v] && *given[v] != sum) {
      throw Error(Errc::inconsistent_areas, "node '" + name + "' has area " + std::to_string(*given[v]) +
                                                " but its children sum to " + std::to_string(sum));
    }
    t.area[v] = sum;
  }
}

}  // namespace

std::vector<NodeId> preorder(const PlainTree& t) {
  std::vector<NodeId> order;
  order.reserve(t.size());
  std::vector<NodeId> stack{t.root};
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (auto it = t.children[v].rbegin(); it != t.children[v].rend(); ++it) stack.push_back(*it);
  }
  return order;
}

NodeId lookup_name(const std::vector<std::string>& names, const std::string& name) {
  const auto it = std::lower_bound(names.begin(), names.end(), name);
  if (it == names.end() || *it != name) throw Error(Errc::key, "unknown node '" + name + "'");
  return static_cast<NodeId>(it - names.begin());
}

bool PlainTree::is_binary() const {
  return std::all_of(children.begin(), children.end(), [](const auto& c) { return c.size() <= 2; });
}

PlainTree PlainTree::build(const std::vector<TreeNodeSpec>& nodes) {
  PlainTree t;
  for (const auto& s : nodes) t.names.push_back(s.name);
  t.names = sorted_unique(std::move(t.names));
  if (t.names.size() != nodes.size()) throw Error(Errc::not_a_tree, "duplicate node name");
  const std::size_t n = t.names.size();
  std::vector<std::map<std::int64_t, NodeId>> ordered(n);
  std::vector<std::optional<std::int64_t>> given(n);
  std::size_t roots = 0;
  for (const auto& s : nodes) {
    const NodeId v = lookup_name(t.names, s.name);
    given[v] = s.area;
    if (s.parent.empty()) {
      ++roots;
      continue;
    }
    NodeId p = 0;
    try {
      p = lookup_name(t.names, s.parent);
    } catch (const Error&) {
      throw Error(Errc::not_a_tree, "node '" + s.name + "' has unknown parent '" + s.parent + "'");
    }
    if (!ordered[p].emplace(s.child_index, v).second) {
      throw Error(Errc::not_a_tree, "parent '" + s.parent + "' has two children with index " +
                                        std::to_string(s.child_index));
    }
  }
  if (roots != 1) throw Error(Errc::not_a_tree, "expected exactly one root, found " + std::to_string(roots));
  t.children.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    for (const auto& [idx, c] : ordered[p]) t.children[p].push_back(c);
  }
  finish_tree(t);
  resolve_areas(t, given);
  return t;
}

PlainTree PlainTree::from_children(std::vector<std::string> names, std::vector<std::vector<NodeId>> children,
                                   std::vector<std::int64_t> area) {
  const std::size_t n = names.size();
  if (children.size() != n) throw Error(Errc::not_a_tree, "children list size mismatch");
  std::vector<NodeId> rank(n);
  {
    std::vector<NodeId> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<NodeId>(i);
    std::sort(idx.begin(), idx.end(), [&](NodeId a, NodeId b) { return names[a] < names[b]; });
    for (std::size_t r = 0; r < n; ++r) rank[idx[r]] = static_cast<NodeId>(r);
  }
  PlainTree t;
  t.names = sorted_unique(names);
  if (t.names.size() != n) throw Error(Errc::not_a_tree, "duplicate node name");
  t.children.resize(n);
  std::vector<std::optional<std::int64_t>> given(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (NodeId c : children[v]) t.children[rank[v]].push_back(rank.at(c));
    if (!area.empty()) given[rank[v]] = area[v];
  }
  finish_tree(t);
  if (!area.empty()) {
    // Internal areas are always derived for generated instances.
    for (std::size_t v = 0; v < n; ++v) {
      if (!t.children[v].empty()) given[v].reset();
    }
  }
  resolve_areas(t, given);
  return t;
}

PlainDag PlainDag::build(const std::vector<DagEdgeSpec>& specs) {
  PlainDag g;
  if (specs.empty()) throw Error(Errc::malformed_graph, "digraph has no edges");
  for (const auto& e : specs) {
    g.names.push_back(e.from);
    g.names.push_back(e.to);
  }
  g.names = sorted_unique(std::move(g.names));
  const std::size_t n = g.names.size();
  g.out_edges.resize(n);
  g.in_edges.resize(n);
  std::vector<std::map<std::int64_t, std::size_t>> out_rank(n), in_rank(n);
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& s = specs[i];
    DagEdge e;
    e.from = lookup_name(g.names, s.from);
    e.to = lookup_name(g.names, s.to);
    if (e.from == e.to) throw Error(Errc::malformed_graph, "self loop at '" + s.from + "'");
    e.out_rank = s.out_rank;
    e.in_rank = s.in_rank;
    if (!out_rank[e.from].emplace(s.out_rank, i).second) {
      throw Error(Errc::malformed_graph, "two edges leave '" + s.from + "' with rank " + std::to_string(s.out_rank));
    }
    if (!in_rank[e.to].emplace(s.in_rank, i).second) {
      throw Error(Errc::malformed_graph, "two edges enter '" + s.to + "' with rank " + std::to_string(s.in_rank));
    }
    g.edges.push_back(e);
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::int64_t expect = 1;
    for (const auto& [r, i] : out_rank[v]) {
      if (r != expect++) throw Error(Errc::malformed_graph, "out ranks of '" + g.names[v] + "' are not 1..k");
      g.out_edges[v].push_back(i);
    }
    expect = 1;
    for (const auto& [r, i] : in_rank[v]) {
      if (r != expect++) throw Error(Errc::malformed_graph, "in ranks of '" + g.names[v] + "' are not 1..k");
      g.in_edges[v].push_back(i);
    }
  }
  for (auto& e : g.edges) {
    e.indegree = static_cast<std::int64_t>(g.in_edges[e.to].size());
    e.outdegree = static_cast<std::int64_t>(g.out_edges[e.from].size());
  }
  std::vector<NodeId> sources, sinks;
  for (std::size_t v = 0; v < n; ++v) {
    if (g.in_edges[v].empty()) sources.push_back(static_cast<NodeId>(v));
    if (g.out_edges[v].empty()) sinks.push_back(static_cast<NodeId>(v));
  }
  if (sources.size() != 1) {
    throw Error(Errc::malformed_graph, "expected one source, found " + std::to_string(sources.size()));
  }
  if (sinks.size() != 1) throw Error(Errc::malformed_graph, "expected one sink, found " + std::to_string(sinks.size()));
  g.source = sources[0];
  g.sink = sinks[0];
  // Kahn's algorithm: every node must be removed for the graph to be acyclic.
  std::vector<std::size_t> indeg(n);
  for (std::size_t v = 0; v < n; ++v) indeg[v] = g.in_edges[v].size();
  std::vector<NodeId> ready{g.source};
  std::size_t removed = 0;
  while (!ready.empty()) {
    const NodeId v = ready.back();
    ready.pop_back();
    ++removed;
    for (std::size_t i : g.out_edges[v]) {
      if (--indeg[g.edges[i].to] == 0) ready.push_back(g.edges[i].to);
    }
  }
  if (removed != n) throw Error(Errc::malformed_graph, "digraph has a cycle");
  return g;
}

std::size_t PlainSpq::q_count() const {
  return static_cast<std::size_t>(std::count(type.begin(), type.end(), SpqType::q));
}

PlainDag PlainSpq::graph() const {
  std::vector<DagEdgeSpec> specs;
  std::map<NodeId, std::int64_t> out_next, in_next;
  for (NodeId v : preorder(tree)) {
    if (type[v] != SpqType::q) continue;
    DagEdgeSpec e;
    e.from = vertices[src[v]];
    e.to = vertices[snk[v]];
    e.out_rank = ++out_next[src[v]];
    e.in_rank = ++in_next[snk[v]];
    specs.push_back(e);
  }
  return PlainDag::build(specs);
}

PlainSpq PlainSpq::build(const std::vector<SpqNodeSpec>& nodes) {
  std::vector<TreeNodeSpec> shape;
  std::vector<std::string> vertex_names;
  for (const auto& s : nodes) {
    shape.push_back({s.id, s.parent, s.child_index, std::nullopt});
    if (s.type == SpqType::q) {
      if (s.from.empty() || s.to.empty()) throw Error(Errc::malformed_spq, "Q node '" + s.id + "' lacks endpoints");
      if (s.from == s.to) throw Error(Errc::malformed_spq, "Q node '" + s.id + "' is a self loop");
      vertex_names.push_back(s.from);
      vertex_names.push_back(s.to);
    }
  }
  PlainSpq q;
  q.tree = PlainTree::build(shape);
  q.vertices = sorted_unique(std::move(vertex_names));
  const std::size_t n = q.tree.size();
  q.type.assign(n, SpqType::q);
  q.src.assign(n, -1);
  q.snk.assign(n, -1);
  for (const auto& s : nodes) {
    const NodeId v = lookup_name(q.tree.names, s.id);
    q.type[v] = s.type;
    const auto k = q.tree.children[v].size();
    if (s.type == SpqType::q) {
      if (k != 0) throw Error(Errc::malformed_spq, "Q node '" + s.id + "' has children");
      q.src[v] = lookup_name(q.vertices, s.from);
      q.snk[v] = lookup_name(q.vertices, s.to);
    } else if (k != 2) {
      throw Error(Errc::malformed_spq, std::string(s.type == SpqType::s ? "S" : "P") + " node '" + s.id +
                                           "' has " + std::to_string(k) + " children, expected 2");
    }
  }
  const auto order = preorder(q.tree);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId v = *it;
    if (q.type[v] == SpqType::q) continue;
    const NodeId a = q.tree.children[v][0];
    const NodeId b = q.tree.children[v][1];
    if (q.type[v] == SpqType::s) {
      if (q.snk[a] != q.src[b]) {
        throw Error(Errc::malformed_spq, "S node '" + q.tree.names[v] + "': children share no join vertex");
      }
    } else if (q.src[a] != q.src[b] || q.snk[a] != q.snk[b]) {
      throw Error(Errc::malformed_spq, "P node '" + q.tree.names[v] + "': children have different terminals");
    }
    q.src[v] = q.src[a];
    q.snk[v] = q.snk[b];
  }
  // Every vertex other than the two terminals must be the join of exactly one S node.
  std::vector<int> joins(q.vertices.size(), 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (q.type[v] == SpqType::s) ++joins[q.src[q.tree.children[v][1]]];
  }
  for (std::size_t x = 0; x < q.vertices.size(); ++x) {
    const bool terminal = static_cast<NodeId>(x) == q.src[q.tree.root] || static_cast<NodeId>(x) == q.snk[q.tree.root];
    if (joins[x] != (terminal ? 0 : 1)) {
      throw Error(Errc::malformed_spq, "vertex '" + q.vertices[x] + "' is not a unique series join");
    }
  }
  return q;
}

}  // namespace odraw

namespace odraw {

namespace {

void expect_cover(const std::vector<std::string>& names, const std::vector<Record>& records) {
  if (records.size() != names.size()) {
    throw Error(Errc::incomplete_drawing, "expected " + std::to_string(names.size()) + " nodes, got " +
                                              std::to_string(records.size()));
  }
}

void expect_node(const std::vector<std::string>& names, const Record& r, std::size_t i, NodeId node) {
  if (r.is_dummy() || node != static_cast<NodeId>(i)) {
    throw Error(Errc::incomplete_drawing, "node '" + names[i] + "' missing or duplicated in the drawing");
  }
}

}  // namespace

Drawing decode_points(const std::vector<std::string>& names, const std::vector<Record>& records) {
  expect_cover(names, records);
  Drawing d;
  d.names = names;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].is_dummy()) expect_node(names, records[i], i, -1);
    const PointRecord p = PointRecord::decode(records[i]);
    expect_node(names, records[i], i, p.node);
    d.points.push_back(Point{p.x, p.y});
  }
  return d;
}

Drawing decode_rects(const std::vector<std::string>& names, const std::vector<Record>& records) {
  expect_cover(names, records);
  Drawing d;
  d.names = names;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].is_dummy()) expect_node(names, records[i], i, -1);
    const RectRecord r = RectRecord::decode(records[i]);
    expect_node(names, records[i], i, r.node);
    d.rects.push_back(Rect{r.px, r.py, r.qx, r.qy});
  }
  return d;
}

}  // namespace odraw
