#include "fixtures.hpp"
#include "odraw/algorithms.hpp"
#include "odraw/audit.hpp"
#include "odraw/euler.hpp"
#include "odraw/tree_drawings.hpp"
#include "support.hpp"

using namespace odraw;

namespace {

Instance fuzz_instance(Algorithm a, std::size_t n, std::uint64_t seed) {
  switch (required_kind(a)) {
    case InstanceKind::dag: return generate_reduced_sp_dag(n, seed);
    case InstanceKind::spq: return generate_spq(n, seed);
    default: break;
  }
  if (a == Algorithm::brect) return generate_binary_tree(n, seed);
  return generate_tree(n, seed, a == Algorithm::treemap);
}

TraceLog trace_of(Algorithm a, const Instance& inst, std::uint64_t seed) {
  TraceLog log;
  run_algorithm(a, inst, RuntimeConfig{seed}, {}, &log);
  return log;
}

}  // namespace

TEST_CASE("equal seeds and sizes give equal traces for different trees") {
  const auto a = fixtures::chain3();
  const auto b = fixtures::cherry();
  for (Algorithm alg : {Algorithm::subtree_sizes, Algorithm::depths, Algorithm::brect}) {
    const auto d = compare_traces(trace_of(alg, a, 9), trace_of(alg, b, 9));
    CHECK_MESSAGE(d.equal, to_string(alg), ": ", d.detail);
  }
  const auto ta = PlainTree::build({{"r", "", 0, {}}, {"a", "r", 1, {}}, {"b", "a", 1, 5}});
  const auto tb = PlainTree::build({{"r", "", 0, {}}, {"a", "r", 1, 7}, {"b", "r", 2, 1}});
  CHECK(compare_traces(trace_of(Algorithm::treemap, ta, 3), trace_of(Algorithm::treemap, tb, 3)).equal);
}

TEST_CASE("equal seeds and shapes give equal traces on fuzzed instances") {
  for (Algorithm alg : kAllAlgorithms) {
    int compared = 0;
    const auto base = fuzz_instance(alg, 24, 100);
    const TraceLog tb = trace_of(alg, base, 4);
    for (std::uint64_t seed = 0; seed < 60 && compared < 3; ++seed) {
      const auto other = fuzz_instance(alg, 24, seed);
      // Dags and decompositions also need matching edge and vertex counts.
      if (instance_size(other) != instance_size(base)) continue;
      if (const auto* g = std::get_if<PlainDag>(&other)) {
        if (g->edges.size() != std::get<PlainDag>(base).edges.size()) continue;
      }
      if (const auto* s = std::get_if<PlainSpq>(&other)) {
        if (s->vertices.size() != std::get<PlainSpq>(base).vertices.size()) continue;
      }
      const auto d = compare_traces(tb, trace_of(alg, other, 4));
      CHECK_MESSAGE(d.equal, to_string(alg), ": ", d.detail);
      ++compared;
    }
    CHECK_MESSAGE(compared > 0, to_string(alg));
  }
}

TEST_CASE("different sizes diverge") {
  const auto small = generate_tree(10, 1, false);
  const auto large = generate_tree(11, 1, false);
  const auto d = compare_traces(trace_of(Algorithm::subtree_sizes, small, 0),
                                trace_of(Algorithm::subtree_sizes, large, 0));
  CHECK_FALSE(d.equal);
  REQUIRE(d.round);
  REQUIRE(d.event);
}

TEST_CASE("different seeds change only indices") {
  const auto t = generate_tree(40, 2, true);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto a = trace_of(Algorithm::treemap, t, s);
    const auto b = trace_of(Algorithm::treemap, t, s + 1000);
    CHECK(compare_trace_shape(a, b).equal);
  }
  CHECK_FALSE(compare_traces(trace_of(Algorithm::treemap, t, 0), trace_of(Algorithm::treemap, t, 1)).equal);
}

TEST_CASE("traces are unique per program, size and seed") {
  for (Algorithm alg : kAllAlgorithms) {
    const auto inst = fuzz_instance(alg, 30, 7);
    const auto first = trace_of(alg, inst, 11);
    for (int i = 0; i < 10; ++i) CHECK(compare_traces(first, trace_of(alg, inst, 11)).equal);
  }
}

TEST_CASE("round discipline holds for every program") {
  for (Algorithm alg : kAllAlgorithms) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto inst = fuzz_instance(alg, 1 + seed * 9, seed);
      const auto rep = check_round_discipline(trace_of(alg, inst, seed));
      CHECK_MESSAGE(rep.ok(), to_string(alg), ": ", rep.violations.front());
    }
  }
}

TEST_CASE("round discipline catches tampered traces") {
  const auto t = generate_tree(12, 3, false);
  const auto clean = trace_of(Algorithm::subtree_sizes, t, 0);
  auto first_read = [](const TraceLog& log) {
    for (std::size_t i = 0; i + 1 < log.events.size(); ++i) {
      if (log.events[i].kind == EventKind::read && log.events[i].round == log.events[i + 2].round) return i;
    }
    return std::size_t{0};
  };
  {
    auto dup = clean;
    const std::size_t i = first_read(dup);
    dup.events[i + 2].index = dup.events[i].index;
    const auto rep = check_round_discipline(dup);
    REQUIRE_FALSE(rep.ok());
    const std::string want = "round " + std::to_string(dup.events[i].round);
    CHECK(rep.violations.front().find(want) == 0);
    CHECK(rep.violations.front().find("index " + std::to_string(dup.events[i].index) + " read twice") !=
          std::string::npos);
  }
  {
    auto bad = clean;
    for (auto& e : bad.events) {
      if (e.kind == EventKind::shuffle) {
        e.index += 1;
        break;
      }
    }
    CHECK_FALSE(check_round_discipline(bad).ok());
  }
  {
    auto dropped = clean;
    dropped.events.pop_back();
    CHECK_FALSE(check_round_discipline(dropped).ok());
  }
  CHECK_FALSE(check_round_discipline(clean, clean.rounds.size() + 1).ok());
  CHECK(check_round_discipline(clean, clean.rounds.size()).ok());
  auto counts = clean;
  counts.mode = TraceMode::counts;
  CHECK_FALSE(check_round_discipline(counts).ok());
}

TEST_CASE("workspace report") {
  const auto t = generate_tree(256, 5, true);
  const auto w = workspace_report(trace_of(Algorithm::treemap, t, 0));
  CHECK(w.report.ok());
  CHECK(w.max_peak <= 32);

  std::uint64_t first = 0;
  for (std::size_t n = 16; n <= 1024; n *= 4) {
    const auto s = workspace_report(trace_of(Algorithm::subtree_sizes, generate_tree(n, n, false), 0));
    CHECK(s.max_peak <= 32);
    if (first == 0) first = s.max_peak;
    CHECK(s.max_peak == first);
  }

  const auto small = generate_complete_binary_tree(1 << 6, false);
  const auto large = generate_complete_binary_tree(1 << 10, false);
  const auto ws = workspace_report(trace_of(Algorithm::brect, small, 0), brect_workspace_budget(small.size()));
  const auto wl = workspace_report(trace_of(Algorithm::brect, large, 0), brect_workspace_budget(large.size()));
  CHECK(ws.report.ok());
  CHECK(wl.report.ok());
  CHECK(wl.max_peak >= ws.max_peak);
  CHECK(wl.max_peak - ws.max_peak <= 16);

  TraceLog fake;
  fake.rounds.push_back({0, 4, Prepare::none, true, 40});
  CHECK_FALSE(workspace_report(fake).report.ok());
}

TEST_CASE("shuffle positions look uniform (advisory)") {
  const auto u = shuffle_uniformity(8, 1000);
  std::uint64_t total = 0;
  for (auto c : u.counts) total += c;
  CHECK(total == 1000);
  if (!u.uniform) {
    WARN_MESSAGE(u.uniform, "chi-square ", u.statistic, " above critical ", u.critical);
  }
}
