#include "odraw/trace.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "odraw/error.hpp"

namespace odraw {

std::size_t TraceLog::scan_rounds() const noexcept {
  std::size_t count = 0;
  for (const auto& r : rounds) count += r.scanned ? 1 : 0;
  return count;
}

std::string_view to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::read: return "READ";
    case EventKind::write: return "WRITE";
    case EventKind::shuffle: return "SHUFFLE";
  }
  return "?";
}

std::string_view to_string(Prepare prepare) noexcept {
  switch (prepare) {
    case Prepare::none: return "none";
    case Prepare::shuffle_by_tag: return "shuffle-tag";
    case Prepare::shuffle_by_ordinal: return "shuffle-ordinal";
    case Prepare::sort: return "sort";
  }
  return "?";
}

void write_trace(std::ostream& out, const TraceLog& log) {
  std::size_t next_event = 0;
  for (const auto& r : log.rounds) {
    out << "# round " << r.round << " length " << r.length << " prepare " << to_string(r.prepare)
        << " scanned " << (r.scanned ? 1 : 0) << " peak " << r.peak_words << '\n';
    while (next_event < log.events.size() && log.events[next_event].round == r.round) {
      const auto& e = log.events[next_event++];
      out << e.round << ' ' << to_string(e.kind) << ' ' << e.index << '\n';
    }
  }
  for (; next_event < log.events.size(); ++next_event) {
    const auto& e = log.events[next_event];
    out << e.round << ' ' << to_string(e.kind) << ' ' << e.index << '\n';
  }
}

namespace {

Prepare parse_prepare(const std::string& s, std::size_t line) {
  for (Prepare p : {Prepare::none, Prepare::shuffle_by_tag, Prepare::shuffle_by_ordinal,
                    Prepare::sort}) {
    if (to_string(p) == s) return p;
  }
  throw Error(Errc::parse, "line " + std::to_string(line) + ": unknown prepare '" + s + "'");
}

}  // namespace

TraceLog read_trace(std::istream& in) {
  TraceLog log;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    if (line[0] == '#') {
      std::string hash, k_round, k_len, k_prep, prep, k_scan, k_peak;
      RoundRecord r;
      int scanned = 0;
      ss >> hash >> k_round >> r.round >> k_len >> r.length >> k_prep >> prep >> k_scan >> scanned >>
          k_peak >> r.peak_words;
      if (!ss || k_round != "round") {
        throw Error(Errc::parse, "line " + std::to_string(lineno) + ": bad round header");
      }
      r.prepare = parse_prepare(prep, lineno);
      r.scanned = scanned != 0;
      log.rounds.push_back(r);
      continue;
    }
    TraceEvent e;
    std::string kind;
    ss >> e.round >> kind >> e.index;
    if (!ss) throw Error(Errc::parse, "line " + std::to_string(lineno) + ": bad trace event");
    if (kind == "READ") {
      e.kind = EventKind::read;
      ++log.reads;
    } else if (kind == "WRITE") {
      e.kind = EventKind::write;
      ++log.writes;
    } else if (kind == "SHUFFLE") {
      e.kind = EventKind::shuffle;
      ++log.shuffles;
    } else {
      throw Error(Errc::parse, "line " + std::to_string(lineno) + ": unknown event kind '" + kind + "'");
    }
    log.events.push_back(e);
  }
  return log;
}

}  // namespace odraw
