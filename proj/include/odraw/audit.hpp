#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "odraw/oracle.hpp"
#include "odraw/trace.hpp"

namespace odraw {

struct TraceDiff {
  bool equal = true;
  std::optional<std::uint64_t> round;
  std::optional<std::uint64_t> event;  // position in the event list
  std::string detail;
};

// Events and round structure (length, preparation, scanned) must match.
// Workspace peaks are reported separately and not compared.
TraceDiff compare_traces(const TraceLog& a, const TraceLog& b);

// Same as compare_traces but ignores cell indices: only the sequence of
// (round, kind) pairs and the round structure must agree.
TraceDiff compare_trace_shape(const TraceLog& a, const TraceLog& b);

// Per round: shuffle events follow the fixed schedule for the round length,
// a scanned round reads every index once and writes 0..n-1 in order, and an
// unscanned round has no reads or writes. Needs a full-mode trace.
Report check_round_discipline(const TraceLog& log, std::optional<std::size_t> expected_rounds = {});

inline constexpr std::uint64_t kConstantWorkspaceBudget = 32;

struct WorkspaceReport {
  std::vector<std::uint64_t> peaks;
  std::uint64_t max_peak = 0;
  std::uint64_t budget = 0;
  Report report;
};

WorkspaceReport workspace_report(const TraceLog& log, std::uint64_t budget = kConstantWorkspaceBudget);

struct UniformityResult {
  std::vector<std::uint64_t> counts;
  double statistic = 0;
  double critical = 0;
  bool uniform = true;
};

// Shuffles n records by ordinal under seeds 0..trials-1 and tests where
// record 0 lands with a chi-square test at the given significance.
UniformityResult shuffle_uniformity(std::size_t n, std::size_t trials, double significance = 0.01);

}  // namespace odraw
