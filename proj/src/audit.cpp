#include "odraw/audit.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include "odraw/records.hpp"
#include "odraw/runtime.hpp"
#include "odraw/sorting_network.hpp"

namespace odraw {

namespace {

std::string describe(const RoundRecord& r) {
  return "length " + std::to_string(r.length) + " prepare " + std::string(to_string(r.prepare)) +
         (r.scanned ? " scanned" : " unscanned");
}

std::optional<TraceDiff> compare_rounds(const TraceLog& a, const TraceLog& b) {
  const std::size_t common = std::min(a.rounds.size(), b.rounds.size());
  for (std::size_t i = 0; i < common; ++i) {
    const auto& x = a.rounds[i];
    const auto& y = b.rounds[i];
    if (x.length != y.length || x.prepare != y.prepare || x.scanned != y.scanned) {
      return TraceDiff{false, i, std::nullopt, "round " + std::to_string(i) + ": " + describe(x) + " vs " + describe(y)};
    }
  }
  if (a.rounds.size() != b.rounds.size()) {
    return TraceDiff{false, common, std::nullopt,
                     "round count " + std::to_string(a.rounds.size()) + " vs " + std::to_string(b.rounds.size())};
  }
  return std::nullopt;
}

template <typename Same>
TraceDiff compare_events(const TraceLog& a, const TraceLog& b, Same same) {
  if (a.mode != TraceMode::full || b.mode != TraceMode::full) {
    if (a.reads != b.reads || a.writes != b.writes || a.shuffles != b.shuffles) {
      return TraceDiff{false, std::nullopt, std::nullopt, "event totals differ"};
    }
  }
  const std::size_t common = std::min(a.events.size(), b.events.size());
  for (std::size_t i = 0; i < common; ++i) {
    const auto& x = a.events[i];
    const auto& y = b.events[i];
    if (!same(x, y)) {
      return TraceDiff{false, x.round, i,
                       "event " + std::to_string(i) + ": " + std::to_string(x.round) + " " +
                           std::string(to_string(x.kind)) + " " + std::to_string(x.index) + " vs " +
                           std::to_string(y.round) + " " + std::string(to_string(y.kind)) + " " +
                           std::to_string(y.index)};
    }
  }
  if (a.events.size() != b.events.size()) {
    const auto& longer = a.events.size() > b.events.size() ? a.events : b.events;
    return TraceDiff{false, longer[common].round, common,
                     "event count " + std::to_string(a.events.size()) + " vs " + std::to_string(b.events.size())};
  }
  if (auto d = compare_rounds(a, b)) return *d;
  return TraceDiff{};
}

}  // namespace

TraceDiff compare_traces(const TraceLog& a, const TraceLog& b) {
  return compare_events(a, b, [](const TraceEvent& x, const TraceEvent& y) { return x == y; });
}

TraceDiff compare_trace_shape(const TraceLog& a, const TraceLog& b) {
  return compare_events(a, b, [](const TraceEvent& x, const TraceEvent& y) {
    return x.round == y.round && x.kind == y.kind;
  });
}

Report check_round_discipline(const TraceLog& log, std::optional<std::size_t> expected_rounds) {
  Report rep;
  auto fail = [&](std::size_t round, const std::string& what) {
    rep.violations.push_back("round " + std::to_string(round) + ": " + what);
  };
  if (log.mode != TraceMode::full) {
    rep.violations.push_back("trace keeps no events; record it in full mode");
    return rep;
  }
  if (expected_rounds && log.rounds.size() != *expected_rounds) {
    rep.violations.push_back("expected " + std::to_string(*expected_rounds) + " rounds, found " +
                             std::to_string(log.rounds.size()));
  }
  std::size_t pos = 0;
  const auto& ev = log.events;
  for (std::size_t ri = 0; ri < log.rounds.size(); ++ri) {
    const RoundRecord& r = log.rounds[ri];
    if (r.round != ri) fail(ri, "round record numbered " + std::to_string(r.round));
    const std::size_t begin = pos;
    while (pos < ev.size() && ev[pos].round == ri) ++pos;
    if (pos < ev.size() && ev[pos].round < ri) {
      fail(ri, "event " + std::to_string(pos) + " belongs to an earlier round");
      return rep;
    }
    const std::size_t n = r.length;
    std::size_t i = begin;

    // Expected shuffle schedule.
    std::vector<std::uint64_t> want;
    if (r.prepare == Prepare::shuffle_by_tag || r.prepare == Prepare::shuffle_by_ordinal) {
      for (std::uint64_t k = 0; k < n; ++k) want.push_back(k);
    }
    if (r.prepare != Prepare::none && n > 0) {
      for_each_comparator(n, [&](std::size_t lo, std::size_t hi) {
        want.push_back(lo);
        want.push_back(hi);
      });
    }
    std::size_t shuffles = 0;
    bool broken = false;
    while (i < pos && ev[i].kind == EventKind::shuffle) {
      if (!broken && shuffles < want.size() && ev[i].index != want[shuffles]) {
        fail(ri, "shuffle event " + std::to_string(shuffles) + " touches index " + std::to_string(ev[i].index) +
                     ", schedule says " + std::to_string(want[shuffles]));
        broken = true;
      }
      ++shuffles;
      ++i;
    }
    if (!broken && shuffles != want.size()) {
      fail(ri, std::to_string(shuffles) + " shuffle events, schedule has " + std::to_string(want.size()));
    }

    std::vector<bool> seen(n, false);
    std::uint64_t reads = 0;
    std::uint64_t writes = 0;
    for (; i < pos; ++i) {
      const TraceEvent& e = ev[i];
      if (e.kind == EventKind::shuffle) {
        fail(ri, "shuffle event after the scan began, index " + std::to_string(e.index));
        break;
      }
      if (!r.scanned) {
        fail(ri, "unscanned round has a " + std::string(to_string(e.kind)) + " at index " + std::to_string(e.index));
        break;
      }
      if (e.kind == EventKind::read) {
        if (e.index >= n) {
          fail(ri, "read index " + std::to_string(e.index) + " outside the array");
        } else if (seen[e.index]) {
          fail(ri, "index " + std::to_string(e.index) + " read twice");
        } else {
          seen[e.index] = true;
        }
        ++reads;
        if (writes + 1 != reads) fail(ri, "read at index " + std::to_string(e.index) + " before the previous write");
      } else {
        if (e.index != writes) {
          fail(ri, "write " + std::to_string(writes) + " lands at index " + std::to_string(e.index));
        }
        ++writes;
        if (writes != reads) fail(ri, "write at index " + std::to_string(e.index) + " without a read");
      }
    }
    if (r.scanned && (reads != n || writes != n)) {
      fail(ri, std::to_string(reads) + " reads and " + std::to_string(writes) + " writes over " + std::to_string(n) +
                   " cells");
    }
  }
  if (pos != ev.size()) rep.violations.push_back("events beyond the last round");
  return rep;
}

WorkspaceReport workspace_report(const TraceLog& log, std::uint64_t budget) {
  WorkspaceReport w;
  w.budget = budget;
  for (const auto& r : log.rounds) {
    w.peaks.push_back(r.peak_words);
    w.max_peak = std::max(w.max_peak, r.peak_words);
    if (r.peak_words > budget) {
      w.report.violations.push_back("round " + std::to_string(r.round) + " peaks at " +
                                    std::to_string(r.peak_words) + " words, budget " + std::to_string(budget));
    }
  }
  return w;
}

UniformityResult shuffle_uniformity(std::size_t n, std::size_t trials, double significance) {
  UniformityResult u;
  u.counts.assign(n, 0);
  std::vector<Record> input;
  for (std::size_t i = 0; i < n; ++i) {
    KeyedValue kv;
    kv.key1 = static_cast<std::int64_t>(i);
    kv.count = 0;
    input.push_back(kv.encode());
  }
  for (std::size_t seed = 0; seed < trials; ++seed) {
    RuntimeConfig config;
    config.seed = seed;
    config.trace_mode = TraceMode::counts;
    ScanRuntime rt(config);
    const auto out = rt.download(rt.shuffle(rt.upload(input), Prepare::shuffle_by_ordinal));
    for (std::size_t p = 0; p < out.size(); ++p) {
      if (KeyedValue::decode(out[p]).key1 == 0) ++u.counts[p];
    }
  }
  const double expected = static_cast<double>(trials) / static_cast<double>(n);
  for (auto c : u.counts) u.statistic += (c - expected) * (c - expected) / expected;
  if (n > 1) {
    boost::math::chi_squared dist(static_cast<double>(n - 1));
    u.critical = boost::math::quantile(boost::math::complement(dist, significance));
    u.uniform = u.statistic <= u.critical;
  }
  return u;
}

}  // namespace odraw
