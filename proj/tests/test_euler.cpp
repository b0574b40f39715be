#include <map>

#include "fixtures.hpp"
#include "odraw/euler.hpp"
#include "odraw/oracle.hpp"
#include "support.hpp"

using namespace odraw;

namespace {

std::int64_t value_of(const NodeValues& nv, const std::string& name) {
  return nv.values.at(static_cast<std::size_t>(lookup_name(nv.names, name)));
}

std::vector<std::int64_t> visit_order(const std::vector<TourEdge>& tour, std::uint64_t seed) {
  ScanRuntime rt(RuntimeConfig{seed});
  std::vector<std::int64_t> seen;
  traverse(rt, rt.upload(encode_all(tour)), [&](const TourEdge& e) {
    seen.push_back(e.tag);
    return e.encode();
  });
  return seen;
}

}  // namespace

TEST_CASE("tour of a single node is empty") {
  const auto t = PlainTree::build({{"r", "", 0, {}}});
  CHECK(build_euler_tour(t).empty());
  CHECK(tour_input(t).size() == 1);
}

TEST_CASE("tour of a two-node tree") {
  const auto t = PlainTree::build({{"r", "", 0, {}}, {"c", "r", 1, {}}});
  const auto tour = build_euler_tour(t);
  REQUIRE(tour.size() == 2);
  CHECK(tour[0].is_down());
  CHECK(tour[0].tag == 0);
  CHECK(tour[0].next == 1);
  CHECK_FALSE(tour[1].is_down());
  CHECK(tour[1].next == 0);
  CHECK(t.names[tour[0].parent] == "r");
  CHECK(t.names[tour[0].child] == "c");
}

TEST_CASE("tour of a chain visits down, down, up, up") {
  const auto t = fixtures::chain3();
  const auto tour = build_euler_tour(t);
  REQUIRE(tour.size() == 4);
  auto name = [&](NodeId v) { return t.names[v]; };
  CHECK((tour[0].is_down() && name(tour[0].parent) == "r" && name(tour[0].child) == "c"));
  CHECK((tour[1].is_down() && name(tour[1].parent) == "c" && name(tour[1].child) == "g"));
  CHECK((!tour[2].is_down() && name(tour[2].child) == "g"));
  CHECK((!tour[3].is_down() && name(tour[3].child) == "c"));
}

TEST_CASE("tour invariants on fuzzed trees") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto t = generate_tree(2 + seed * 3, seed);
    const auto tour = build_euler_tour(t);
    REQUIRE(tour.size() == 2 * (t.size() - 1));
    std::map<std::pair<NodeId, NodeId>, int> copies;
    for (const auto& e : tour) {
      copies[{e.parent, e.child}] += e.is_down() ? 1 : 10;
      CHECK(e.child_num >= 1);
      CHECK(e.child_num <= e.parent_outdeg);
    }
    for (const auto& [k, v] : copies) CHECK(v == 11);
    CHECK(tour[0].parent == t.root);
    CHECK(tour[0].child_num == 1);
  }
}

TEST_CASE("traversal order does not depend on the shuffle seed") {
  const auto tour = build_euler_tour(generate_tree(40, 3));
  const auto a = visit_order(tour, 1);
  const auto b = visit_order(tour, 2);
  CHECK(a == b);
  CHECK(a.size() == tour.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == static_cast<std::int64_t>(i));
}

TEST_CASE("broken next chains are traversal errors") {
  auto tour = build_euler_tour(fixtures::chain3());
  tour[1].next = 9;
  ScanRuntime rt(RuntimeConfig{});
  CHECK_ERRC(traverse(rt, rt.upload(encode_all(tour)), [](const TourEdge& e) { return e.encode(); }),
             Errc::traversal);

  auto early = build_euler_tour(fixtures::chain3());
  early[1].next = 0;
  ScanRuntime rt2(RuntimeConfig{});
  CHECK_ERRC(traverse(rt2, rt2.upload(encode_all(early)), [](const TourEdge& e) { return e.encode(); }),
             Errc::traversal);

  auto loop = build_euler_tour(fixtures::chain3());
  loop[2].next = 1;
  ScanRuntime rt3(RuntimeConfig{});
  CHECK_ERRC(traverse(rt3, rt3.upload(encode_all(loop)), [](const TourEdge& e) { return e.encode(); }),
             Errc::traversal);
}

TEST_CASE("subtree sizes") {
  const auto chain = run_subtree_sizes(fixtures::chain3(), RuntimeConfig{});
  CHECK(value_of(chain, "g") == 1);
  CHECK(value_of(chain, "c") == 2);
  CHECK(value_of(chain, "r") == 3);
  const auto single = run_subtree_sizes(PlainTree::build({{"r", "", 0, {}}}), RuntimeConfig{});
  CHECK(single.values == std::vector<std::int64_t>{1});
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto t = generate_tree(1 + (seed * 37) % 256, seed);
    const auto got = run_subtree_sizes(t, RuntimeConfig{seed});
    REQUIRE(got == reference_subtree_sizes(t));
    for (std::size_t v = 0; v < t.size(); ++v) {
      std::int64_t sum = 1;
      for (NodeId c : t.children[v]) sum += got.values[c];
      CHECK(sum == got.values[v]);
    }
  }
}

TEST_CASE("node depths") {
  const auto chain = run_node_depths(fixtures::chain3(), RuntimeConfig{});
  CHECK(value_of(chain, "r") == 0);
  CHECK(value_of(chain, "c") == 1);
  CHECK(value_of(chain, "g") == 2);
  CHECK(run_node_depths(PlainTree::build({{"r", "", 0, {}}}), RuntimeConfig{}).values ==
        std::vector<std::int64_t>{0});
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto t = generate_tree(1 + (seed * 53) % 256, seed);
    REQUIRE(run_node_depths(t, RuntimeConfig{seed}) == reference_depths(t));
  }
}

TEST_CASE("subtree-size trace depends only on n and the seed") {
  TraceLog a, b;
  const auto t1 = generate_tree(30, 1);
  const auto t2 = generate_tree(30, 2);
  run_subtree_sizes(t1, RuntimeConfig{7}, &a);
  run_subtree_sizes(t2, RuntimeConfig{7}, &b);
  CHECK(a.events == b.events);
  CHECK(a.rounds == b.rounds);
  CHECK(a.scan_rounds() == 2);

  TraceLog chain;
  run_subtree_sizes(fixtures::chain3(), RuntimeConfig{7}, &chain);
  CHECK(chain.scan_rounds() == 2);
  CHECK(chain.reads == 8);
  CHECK(chain.writes == 8);
}
