#include "odraw/oracle.hpp"

#include "odraw/cipher.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace odraw {

namespace {

std::vector<std::int64_t> subtree_sizes_of(const PlainTree& t) {
  std::vector<std::int64_t> size(t.size(), 1);
  const auto order = preorder(t);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    for (NodeId c : t.children[*it]) size[*it] += size[c];
  }
  return size;
}

std::string pair_name(const Drawing& d, std::size_t u, std::size_t v) {
  return "(" + d.names[u] + ", " + d.names[v] + ")";
}

}  // namespace

NodeValues reference_subtree_sizes(const PlainTree& tree) {
  return NodeValues{tree.names, subtree_sizes_of(tree)};
}

NodeValues reference_depths(const PlainTree& tree) {
  std::vector<std::int64_t> depth(tree.size(), 0);
  for (NodeId v : preorder(tree)) {
    for (NodeId c : tree.children[v]) depth[c] = depth[v] + 1;
  }
  return NodeValues{tree.names, depth};
}

Drawing reference_dominance(const PlainDag& dag, DominanceMode mode) {
  const std::size_t n = dag.size();
  Drawing d;
  d.names = dag.names;
  d.points.assign(n, Point{});
  for (int axis = 0; axis < 2; ++axis) {
    // x: tree of rightmost incoming edges, children leftmost first.
    // y: tree of leftmost incoming edges, children rightmost first.
    std::vector<std::vector<NodeId>> kids(n);
    for (std::size_t v = 0; v < n; ++v) {
      auto out = dag.out_edges[v];
      if (axis == 1) std::reverse(out.begin(), out.end());
      for (std::size_t i : out) {
        const DagEdge& e = dag.edges[i];
        const bool in_tree = axis == 0 ? e.in_rank == e.indegree : e.in_rank == 1;
        if (in_tree) kids[v].push_back(e.to);
      }
    }
    std::int64_t counter = 0;
    std::vector<std::int64_t> coord(n, -1);
    coord[dag.source] = 0;
    std::vector<std::pair<NodeId, std::size_t>> stack{{dag.source, 0}};
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next == kids[v].size()) {
        stack.pop_back();
        continue;
      }
      const NodeId c = kids[v][next];
      const bool keep = mode == DominanceMode::compressed && next == 0 &&
                        dag.in_edges[c].size() > 1;
      ++next;
      if (!keep) ++counter;
      coord[c] = counter;
      stack.emplace_back(c, 0);
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (coord[v] < 0) throw Error(Errc::spanning, "node '" + dag.names[v] + "' not reached by spanning tree");
      (axis == 0 ? d.points[v].x : d.points[v].y) = Rational(coord[v]);
    }
  }
  return d;
}

Drawing reference_treemap(const PlainTree& tree, const Rational& width, const Rational& height) {
  if (!tree.has_areas()) throw Error(Errc::degenerate_input, "treemap needs node areas");
  if (width <= Rational(0) || height <= Rational(0)) {
    throw Error(Errc::degenerate_input, "treemap rectangle must have positive size");
  }
  Drawing d;
  d.names = tree.names;
  d.rects.assign(tree.size(), Rect{});
  d.rects[tree.root] = Rect{Rational(0), Rational(0), width, height};
  std::vector<int> axis(tree.size(), 0);
  for (NodeId v : preorder(tree)) {
    const Rect& r = d.rects[v];
    const int a = axis[v];
    const Rational lo = a == 0 ? r.px : r.py;
    const Rational len = a == 0 ? r.qx - r.px : r.qy - r.py;
    std::int64_t before = 0;
    for (NodeId c : tree.children[v]) {
      const Rational start = lo + len * Rational(before) / Rational(tree.area[v]);
      before += tree.area[c];
      const Rational end = lo + len * Rational(before) / Rational(tree.area[v]);
      Rect cr = r;
      if (a == 0) {
        cr.px = start;
        cr.qx = end;
      } else {
        cr.py = start;
        cr.qy = end;
      }
      d.rects[c] = cr;
      axis[c] = 1 - a;
    }
  }
  return d;
}

DeltaSizes reference_delta_sizes(const PlainSpq& spq) {
  const auto& t = spq.tree;
  DeltaSizes s;
  s.b.assign(t.size(), 0);
  s.b_prime.assign(t.size(), 0);
  const auto order = preorder(t);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId v = *it;
    switch (spq.type[v]) {
      case SpqType::q:
        s.b[v] = 2;
        s.b_prime[v] = 2;
        break;
      case SpqType::s: {
        const NodeId a = t.children[v][0], c = t.children[v][1];
        s.b[v] = s.b[a] + s.b[c];
        s.b_prime[v] = s.b_prime[a];
        break;
      }
      case SpqType::p: {
        const NodeId a = t.children[v][0], c = t.children[v][1];
        s.b[v] = s.b[a] + s.b[c];
        s.b_prime[v] = s.b_prime[a] + s.b_prime[c];
        break;
      }
    }
  }
  return s;
}

Drawing reference_delta(const PlainSpq& spq) {
  const auto& t = spq.tree;
  const DeltaSizes s = reference_delta_sizes(spq);
  std::vector<std::int64_t> x(t.size(), 0), y(t.size(), 0);
  Drawing d;
  d.names = spq.vertices;
  d.points.assign(spq.vertices.size(), Point{});
  std::vector<bool> placed(spq.vertices.size(), false);
  auto place = [&](NodeId vertex, std::int64_t px, std::int64_t py) {
    d.points[vertex] = Point{Rational(px), Rational(py)};
    placed[vertex] = true;
  };
  place(spq.src[t.root], 0, 0);
  place(spq.snk[t.root], 0, s.b[t.root]);
  for (NodeId v : preorder(t)) {
    if (spq.type[v] == SpqType::q) continue;
    const NodeId a = t.children[v][0], c = t.children[v][1];
    if (spq.type[v] == SpqType::s) {
      x[a] = x[v];
      y[a] = y[v];
      x[c] = x[v];
      y[c] = y[v] + s.b[a];
      place(spq.src[c], x[c], y[c]);
    } else {
      x[a] = x[v] - s.b[c] / 2;
      y[a] = y[v] + s.b[c] / 2;
      x[c] = x[v];
      y[c] = y[v] + s.b_prime[a];
    }
  }
  for (std::size_t i = 0; i < placed.size(); ++i) {
    if (!placed[i]) throw Error(Errc::incomplete_drawing, "vertex '" + spq.vertices[i] + "' was not placed");
  }
  return d;
}

Drawing reference_brect(const PlainTree& tree) {
  if (!tree.is_binary()) throw Error(Errc::arity, "bounding-rectangle drawing needs a binary tree");
  Drawing d;
  d.names = tree.names;
  d.points.assign(tree.size(), Point{});
  const auto order = preorder(tree);
  std::int64_t leaves = 0;
  for (NodeId v : order) {
    if (tree.children[v].empty()) d.points[v] = Point{Rational(2 * leaves++ + 1), Rational(0)};
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto& kids = tree.children[*it];
    if (kids.size() == 1) {
      d.points[*it] = Point{d.points[kids[0]].x, d.points[kids[0]].y + Rational(1)};
    } else if (kids.size() == 2) {
      const Point& a = d.points[kids[0]];
      const Point& b = d.points[kids[1]];
      d.points[*it] = Point{(a.x + b.x) / Rational(2), Rational(1) + max(a.y, b.y)};
    }
  }
  return d;
}

Report check_dominance_property(const Drawing& drawing, const PlainDag& dag) {
  Report rep;
  const std::size_t n = dag.size();
  if (drawing.points.size() != n || drawing.names != dag.names) {
    rep.violations.push_back("drawing does not cover the digraph's nodes");
    return rep;
  }
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t u = 0; u < n; ++u) {
    std::vector<NodeId> stack{static_cast<NodeId>(u)};
    reach[u][u] = true;
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      for (std::size_t i : dag.out_edges[v]) {
        const NodeId w = dag.edges[i].to;
        if (!reach[u][w]) {
          reach[u][w] = true;
          stack.push_back(w);
        }
      }
    }
  }
  const auto& p = drawing.points;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v) continue;
      const bool dominated = p[u].x <= p[v].x && p[u].y <= p[v].y;
      if (reach[u][v] != dominated) {
        rep.violations.push_back(std::string(reach[u][v] ? "reachable but not dominated " :
                                                           "dominated but not reachable ") +
                                 pair_name(drawing, u, v));
      }
      if (u < v && p[u] == p[v]) rep.violations.push_back("shared coordinates " + pair_name(drawing, u, v));
    }
  }
  return rep;
}

Report check_treemap(const Drawing& drawing, const PlainTree& tree, const Rational& width, const Rational& height) {
  Report rep;
  if (drawing.rects.size() != tree.size() || drawing.names != tree.names) {
    rep.violations.push_back("drawing does not cover the tree's nodes");
    return rep;
  }
  const auto& r = drawing.rects;
  if (!(r[tree.root] == Rect{Rational(0), Rational(0), width, height})) {
    rep.violations.push_back("root rectangle is not the full canvas");
  }
  const Rational total = width * height;
  std::vector<int> axis(tree.size(), 0);
  for (NodeId v : preorder(tree)) {
    const Rect& pr = r[v];
    if (pr.qx < pr.px || pr.qy < pr.py) rep.violations.push_back("inverted rectangle at " + tree.names[v]);
    const Rational area = (pr.qx - pr.px) * (pr.qy - pr.py);
    if (area * Rational(tree.area[tree.root]) != total * Rational(tree.area[v])) {
      rep.violations.push_back("area not proportional at " + tree.names[v]);
    }
    const int a = axis[v];
    Rational cursor = a == 0 ? pr.px : pr.py;
    for (NodeId c : tree.children[v]) {
      axis[c] = 1 - a;
      const Rect& cr = r[c];
      const bool other_ok = a == 0 ? (cr.py == pr.py && cr.qy == pr.qy) : (cr.px == pr.px && cr.qx == pr.qx);
      const Rational start = a == 0 ? cr.px : cr.py;
      if (!other_ok || start != cursor) {
        rep.violations.push_back("child " + tree.names[c] + " does not tile parent " + tree.names[v]);
      }
      cursor = a == 0 ? cr.qx : cr.qy;
    }
    if (!tree.children[v].empty() && cursor != (a == 0 ? pr.qx : pr.qy)) {
      rep.violations.push_back("children of " + tree.names[v] + " leave a gap");
    }
  }
  return rep;
}

Report check_delta(const Drawing& drawing, const PlainSpq& spq) {
  Report rep;
  const Drawing ref = reference_delta(spq);
  if (drawing.names != ref.names || drawing.points.size() != ref.points.size()) {
    rep.violations.push_back("drawing does not cover the graph's vertices");
    return rep;
  }
  for (std::size_t i = 0; i < ref.points.size(); ++i) {
    if (!(drawing.points[i] == ref.points[i])) rep.violations.push_back("vertex " + ref.names[i] + " misplaced");
  }
  return rep;
}

Report check_brect(const Drawing& drawing, const PlainTree& tree) {
  Report rep;
  if (drawing.points.size() != tree.size() || drawing.names != tree.names) {
    rep.violations.push_back("drawing does not cover the tree's nodes");
    return rep;
  }
  const auto& p = drawing.points;
  const auto order = preorder(tree);
  std::vector<std::int64_t> height(tree.size(), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    for (NodeId c : tree.children[*it]) height[*it] = std::max(height[*it], height[c] + 1);
  }
  const Point* last_leaf = nullptr;
  for (NodeId v : order) {
    if (p[v].y != Rational(height[v])) rep.violations.push_back("height mismatch at " + tree.names[v]);
    const auto& kids = tree.children[v];
    if (kids.empty()) {
      if (last_leaf && !(last_leaf->x < p[v].x)) rep.violations.push_back("leaf order broken at " + tree.names[v]);
      last_leaf = &p[v];
    } else if (kids.size() == 2) {
      const Rational mid = (p[kids[0]].x + p[kids[1]].x) / Rational(2);
      if (p[v].x != mid || !(p[kids[0]].x < p[v].x && p[v].x < p[kids[1]].x)) {
        rep.violations.push_back("parent not centred at " + tree.names[v]);
      }
    } else if (kids.size() == 1 && p[v].x != p[kids[0]].x) {
      rep.violations.push_back("single child not aligned at " + tree.names[v]);
    }
  }
  return rep;
}

namespace {

std::vector<std::string> shuffled_names(std::size_t n, const std::string& prefix, Rng& rng) {
  std::vector<std::size_t> label(n);
  std::iota(label.begin(), label.end(), 0);
  std::shuffle(label.begin(), label.end(), rng);
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = prefix + std::to_string(label[i]);
  return names;
}

}  // namespace

PlainTree generate_tree(std::size_t n, std::uint64_t seed, bool with_areas) {
  if (n == 0) throw Error(Errc::degenerate_input, "tree size must be at least 1");
  Rng rng(seed);
  std::vector<std::vector<NodeId>> kids(n);
  for (std::size_t i = 1; i < n; ++i) {
    auto& list = kids[rng() % i];
    list.insert(list.begin() + static_cast<std::ptrdiff_t>(rng() % (list.size() + 1)), static_cast<NodeId>(i));
  }
  std::vector<std::int64_t> area;
  if (with_areas) {
    area.resize(n);
    for (auto& a : area) a = 1 + static_cast<std::int64_t>(rng() % 9);
  }
  return PlainTree::from_children(shuffled_names(n, "v", rng), std::move(kids), std::move(area));
}

PlainTree generate_binary_tree(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(Errc::degenerate_input, "tree size must be at least 1");
  Rng rng(seed);
  std::vector<std::vector<NodeId>> kids(n);
  std::vector<NodeId> open{0};
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t k = rng() % open.size();
    const NodeId p = open[k];
    auto& list = kids[p];
    if (!list.empty() && rng() % 2 == 0) {
      list.insert(list.begin(), static_cast<NodeId>(i));
    } else {
      list.push_back(static_cast<NodeId>(i));
    }
    if (list.size() == 2) {
      open[k] = open.back();
      open.pop_back();
    }
    open.push_back(static_cast<NodeId>(i));
  }
  return PlainTree::from_children(shuffled_names(n, "v", rng), std::move(kids));
}

PlainTree generate_complete_binary_tree(std::size_t n, bool with_areas) {
  if (n == 0) throw Error(Errc::degenerate_input, "tree size must be at least 1");
  std::vector<std::vector<NodeId>> kids(n);
  for (std::size_t i = 1; i < n; ++i) kids[(i - 1) / 2].push_back(static_cast<NodeId>(i));
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = "v" + std::to_string(i);
  std::vector<std::int64_t> area;
  if (with_areas) area.assign(n, 1);
  return PlainTree::from_children(std::move(names), std::move(kids), std::move(area));
}

PlainSpq generate_spq(std::size_t q_leaves, std::uint64_t seed, bool reduced) {
  if (q_leaves == 0) throw Error(Errc::degenerate_input, "SPQ tree needs at least one Q leaf");
  Rng rng(seed);
  struct Pending {
    std::size_t leaves;
    std::string parent;
    std::int64_t index;
    std::size_t src, snk;
    bool force_series;
  };
  const std::size_t vertex_count_bound = q_leaves + 1;
  const auto vnames = shuffled_names(vertex_count_bound, "v", rng);
  std::size_t next_vertex = 0;
  std::size_t next_node = 0;
  std::vector<SpqNodeSpec> specs;
  const std::size_t s0 = next_vertex++, t0 = next_vertex++;
  std::vector<Pending> todo{{q_leaves, "", 0, s0, t0, false}};
  while (!todo.empty()) {
    const Pending job = todo.back();
    todo.pop_back();
    SpqNodeSpec spec;
    spec.id = "n" + std::to_string(next_node++);
    spec.parent = job.parent;
    spec.child_index = job.index;
    if (job.leaves == 1) {
      spec.type = SpqType::q;
      spec.from = vnames[job.src];
      spec.to = vnames[job.snk];
      specs.push_back(spec);
      continue;
    }
    bool parallel = rng() % 2 == 0;
    if (job.force_series || (reduced && job.leaves < 4)) parallel = false;
    std::size_t left = 0;
    if (parallel && reduced) {
      left = 2 + rng() % (job.leaves - 3);
    } else {
      left = 1 + rng() % (job.leaves - 1);
    }
    spec.type = parallel ? SpqType::p : SpqType::s;
    specs.push_back(spec);
    if (parallel) {
      todo.push_back({job.leaves - left, spec.id, 2, job.src, job.snk, reduced});
      todo.push_back({left, spec.id, 1, job.src, job.snk, reduced});
    } else {
      const std::size_t mid = next_vertex++;
      todo.push_back({job.leaves - left, spec.id, 2, mid, job.snk, false});
      todo.push_back({left, spec.id, 1, job.src, mid, false});
    }
  }
  return PlainSpq::build(specs);
}

PlainDag generate_reduced_sp_dag(std::size_t q_leaves, std::uint64_t seed) {
  return generate_spq(q_leaves, seed, true).graph();
}

}  // namespace odraw
