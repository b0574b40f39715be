#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace odraw {

enum class EventKind : std::uint8_t { read, write, shuffle };

// How a round's input array was arranged before its scan.
enum class Prepare : std::uint8_t {
  none,
  shuffle_by_tag,      // tag-keyed pass plus sorting network; cell of tag t lands at pi(t)
  shuffle_by_ordinal,  // ordinal-keyed pass plus sorting network
  sort,                // sorting network on a record key
};

struct TraceEvent {
  std::uint32_t round = 0;
  EventKind kind = EventKind::read;
  std::uint64_t index = 0;
  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct RoundRecord {
  std::uint32_t round = 0;
  std::uint64_t length = 0;
  Prepare prepare = Prepare::none;
  bool scanned = false;
  std::uint64_t peak_words = 0;
  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

enum class TraceMode {
  full,    // keep every event
  counts,  // keep only per-kind totals (large-n benchmarking)
};

struct TraceLog {
  TraceMode mode = TraceMode::full;
  std::vector<TraceEvent> events;
  std::vector<RoundRecord> rounds;
  std::uint64_t reads = 0;
  std::uint64_t writes = 0;
  std::uint64_t shuffles = 0;

  std::uint64_t total_accesses() const noexcept { return reads + writes + shuffles; }
  std::size_t scan_rounds() const noexcept;
};

std::string_view to_string(EventKind kind) noexcept;
std::string_view to_string(Prepare prepare) noexcept;

// Text dump: one "# round R length L prepare P scanned S peak K" header per
// round, then "round kind index" per event.
void write_trace(std::ostream& out, const TraceLog& log);
TraceLog read_trace(std::istream& in);

}  // namespace odraw
