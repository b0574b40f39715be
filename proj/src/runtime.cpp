#include "odraw/runtime.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "odraw/sorting_network.hpp"

namespace odraw {

std::span<const std::uint8_t> ServerArray::cell(std::size_t i) const {
  if (i >= n_) {
    throw Error(Errc::out_of_range,
                "cell index " + std::to_string(i) + " outside [0, " + std::to_string(n_) + ")");
  }
  return {data_.data() + i * cell_bytes_, cell_bytes_};
}

std::span<std::uint8_t> ServerArray::mutable_cell(std::size_t i) {
  if (i >= n_) throw Error(Errc::out_of_range, "cell index " + std::to_string(i) + " out of range");
  return {data_.data() + i * cell_bytes_, cell_bytes_};
}

SealedCell ServerArray::copy_cell(std::size_t i) const {
  auto c = cell(i);
  return SealedCell{{c.begin(), c.end()}};
}

ScanRuntime::ScanRuntime(const RuntimeConfig& config)
    : config_(config),
      cipher_(make_cipher(config.cipher, derive_key(config.seed, 0x6b6579))),
      codec_(*cipher_, config.record_words),
      rng_(derive_key(config.seed, 0x6e6f6e6365)),
      workspace_(config.workspace_words) {
  trace_.mode = config.trace_mode;
}

TraceLog ScanRuntime::take_trace() {
  TraceLog out = std::move(trace_);
  trace_ = TraceLog{};
  trace_.mode = config_.trace_mode;
  return out;
}

ServerArray ScanRuntime::upload(std::span<const Record> records) {
  ServerArray a;
  a.n_ = records.size();
  a.cell_bytes_ = codec_.cell_bytes();
  a.data_.resize(a.n_ * a.cell_bytes_);
  for (std::size_t i = 0; i < a.n_; ++i) {
    codec_.seal_into(records[i], 0, {a.data_.data() + i * a.cell_bytes_, a.cell_bytes_}, rng_);
  }
  return a;
}

std::vector<Record> ScanRuntime::download(const ServerArray& array) const {
  std::vector<Record> out;
  out.reserve(array.size());
  for (std::size_t i = 0; i < array.size(); ++i) out.push_back(codec_.open_from(array.cell(i)));
  return out;
}

ServerArray ScanRuntime::concat(ServerArray a, const ServerArray& b) {
  if (a.n_ == 0) {
    ServerArray c = b;
    c.layout_.reset();
    return c;
  }
  if (b.n_ != 0 && a.cell_bytes_ != b.cell_bytes_) {
    throw Error(Errc::serialization, "cannot concatenate arrays of different cell widths");
  }
  a.data_.insert(a.data_.end(), b.data_.begin(), b.data_.end());
  a.n_ += b.n_;
  a.layout_.reset();
  return a;
}

ServerArray ScanRuntime::truncate(ServerArray a, std::size_t n) {
  if (n > a.n_) throw Error(Errc::out_of_range, "truncate past end of array");
  a.n_ = n;
  a.data_.resize(n * a.cell_bytes_);
  a.layout_.reset();
  return a;
}

void ScanRuntime::open_round(std::size_t length, Prepare prepare) {
  RoundRecord r;
  r.round = static_cast<std::uint32_t>(trace_.rounds.size());
  r.length = length;
  r.prepare = prepare;
  trace_.rounds.push_back(r);
  workspace_.reset_round_peak();
}

void ScanRuntime::close_round_peak() {
  if (!trace_.rounds.empty()) {
    auto& r = trace_.rounds.back();
    r.peak_words = std::max<std::uint64_t>(r.peak_words, workspace_.round_peak());
  }
}

void ScanRuntime::log(EventKind kind, std::uint64_t index) {
  switch (kind) {
    case EventKind::read: ++trace_.reads; break;
    case EventKind::write: ++trace_.writes; break;
    case EventKind::shuffle: ++trace_.shuffles; break;
  }
  if (trace_.mode == TraceMode::full) {
    trace_.events.push_back({trace_.rounds.back().round, kind, index});
  }
}

void ScanRuntime::violation(const std::string& what, std::uint64_t index) const {
  const auto round = trace_.rounds.empty() ? 0 : trace_.rounds.back().round;
  throw Error(Errc::round_discipline, "round " + std::to_string(round) + ", index " +
                                          std::to_string(index) + ": " + what);
}

void ScanRuntime::network_sort(ServerArray& array, const EnvelopeKeyFn& key) {
  const std::size_t cb = array.cell_bytes_;
  for_each_comparator(array.n_, [&](std::size_t lo, std::size_t hi) {
    std::span<std::uint8_t> lo_cell{array.data_.data() + lo * cb, cb};
    std::span<std::uint8_t> hi_cell{array.data_.data() + hi * cb, cb};
    std::int64_t lo_env = 0;
    std::int64_t hi_env = 0;
    log(EventKind::shuffle, lo);
    log(EventKind::shuffle, hi);
    Record a = codec_.open_from(lo_cell, &lo_env);
    Record b = codec_.open_from(hi_cell, &hi_env);
    workspace_.charge(a.logical + b.logical);
    const bool swap = key(b, hi_env) < key(a, lo_env);
    workspace_.release(a.logical + b.logical);
    // Both cells are re-sealed whether or not they moved.
    codec_.seal_into(swap ? b : a, swap ? hi_env : lo_env, lo_cell, rng_);
    codec_.seal_into(swap ? a : b, swap ? lo_env : hi_env, hi_cell, rng_);
  });
}

ServerArray ScanRuntime::shuffle(ServerArray array, Prepare by, const TagFn& tag_of) {
  if (active_) throw Error(Errc::round_discipline, "shuffle requested inside an open round");
  if (by != Prepare::shuffle_by_tag && by != Prepare::shuffle_by_ordinal) {
    throw Error(Errc::key, "shuffle must be keyed by tag or ordinal");
  }
  open_round(array.n_, by);
  if (array.n_ == 0) {
    close_round_peak();
    return array;
  }
  Prp prp(derive_key(config_.seed, 1000 + shuffles_done_++), array.n_);
  const std::size_t cb = array.cell_bytes_;
  for (std::size_t i = 0; i < array.n_; ++i) {
    std::span<std::uint8_t> c{array.data_.data() + i * cb, cb};
    log(EventKind::shuffle, i);
    Record r = codec_.open_from(c);
    workspace_.charge(r.logical + 1);
    std::uint64_t source = i;
    if (by == Prepare::shuffle_by_tag) {
      const std::int64_t tag = tag_of(r);
      if (tag < 0 || static_cast<std::uint64_t>(tag) >= array.n_) {
        throw Error(Errc::traversal, "tag " + std::to_string(tag) + " outside [0, " +
                                         std::to_string(array.n_) + ")");
      }
      source = static_cast<std::uint64_t>(tag);
    }
    codec_.seal_into(r, static_cast<std::int64_t>(prp(source)), c, rng_);
    workspace_.release(r.logical + 1);
  }
  network_sort(array, [](const Record&, std::int64_t env) { return SortKey{env, 0, 0, 0}; });
  array.layout_ = prp;
  close_round_peak();
  return array;
}

ServerArray ScanRuntime::sort(ServerArray array, const SortKeyFn& key) {
  if (active_) throw Error(Errc::round_discipline, "sort requested inside an open round");
  open_round(array.n_, Prepare::sort);
  network_sort(array, [&](const Record& r, std::int64_t) { return key(r); });
  array.layout_.reset();
  close_round_peak();
  return array;
}

void ScanRuntime::begin_round(ServerArray input) {
  if (active_) throw Error(Errc::round_discipline, "round already open");
  const bool reuse = !trace_.rounds.empty() && !trace_.rounds.back().scanned &&
                     trace_.rounds.back().prepare != Prepare::none &&
                     trace_.rounds.back().length == input.n_;
  if (!reuse) open_round(input.n_, Prepare::none);
  trace_.rounds.back().scanned = true;
  ActiveRound round;
  round.touched.assign(input.n_, false);
  round.output.cell_bytes_ = codec_.cell_bytes();
  round.output.role_ = ArrayRole::output;
  round.output.data_.reserve(input.n_ * codec_.cell_bytes());
  round.input = std::move(input);
  active_ = std::move(round);
}

Record ScanRuntime::read_cell(std::size_t index) {
  if (!active_) throw Error(Errc::round_discipline, "read outside of a round");
  auto& r = *active_;
  if (index >= r.input.n_) {
    throw Error(Errc::out_of_range,
                "read at index " + std::to_string(index) + " outside [0, " + std::to_string(r.input.n_) + ")");
  }
  if (r.touched[index]) violation("cell read twice in one round", index);
  if (r.item_open) {
    // Previous item never produced its output record.
    if (!r.first_missing) r.first_missing = r.item_index;
    workspace_.release(r.item_words);
  }
  r.touched[index] = true;
  log(EventKind::read, index);
  Record rec = codec_.open_from(r.input.cell(index));
  workspace_.charge(rec.logical);
  r.item_open = true;
  r.item_index = index;
  r.item_words = rec.logical;
  ++r.reads;
  return rec;
}

void ScanRuntime::append_output(const Record& record) {
  if (!active_) throw Error(Errc::round_discipline, "append outside of a round");
  auto& r = *active_;
  if (!r.item_open) violation("second output record for one item", r.item_index);
  // The output is built in place of the item it replaces; only growth is charged.
  const std::uint32_t held = std::max(record.logical, r.item_words);
  workspace_.charge(held - r.item_words);
  workspace_.release(held);
  r.item_open = false;
  const std::size_t pos = r.output.n_;
  r.output.data_.resize((pos + 1) * r.output.cell_bytes_);
  codec_.seal_into(record, 0, {r.output.data_.data() + pos * r.output.cell_bytes_, r.output.cell_bytes_},
                   rng_);
  ++r.output.n_;
  ++r.writes;
  log(EventKind::write, pos);
}

ServerArray ScanRuntime::end_round() {
  if (!active_) throw Error(Errc::round_discipline, "no open round");
  ActiveRound r = std::move(*active_);
  active_.reset();
  if (r.item_open) {
    workspace_.release(r.item_words);
    if (!r.first_missing) r.first_missing = r.item_index;
  }
  close_round_peak();
  if (r.first_missing) violation("item produced no output record", *r.first_missing);
  if (r.reads != r.input.n_) {
    const auto it = std::find(r.touched.begin(), r.touched.end(), false);
    violation("round ended before every cell was read",
              static_cast<std::uint64_t>(it - r.touched.begin()));
  }
  return std::move(r.output);
}

ServerArray ScanRuntime::run(const ScanProgram& program, ServerArray input) {
  ServerArray current = std::move(input);
  for (const auto& spec : program.rounds) {
    switch (spec.prepare) {
      case Prepare::none: break;
      case Prepare::shuffle_by_tag:
      case Prepare::shuffle_by_ordinal: current = shuffle(std::move(current), spec.prepare, spec.tag_of); break;
      case Prepare::sort: current = sort(std::move(current), spec.sort_key); break;
    }
    const std::size_t n = current.size();
    std::optional<Prp> layout = current.layout();
    auto lease = workspace_.lease(spec.state_words);
    begin_round(std::move(current));
    if (spec.order == ScanOrder::sequential) {
      for (std::size_t i = 0; i < n; ++i) append_output(spec.step(read_cell(i)));
    } else {
      if (n > 0 && !layout) {
        throw Error(Errc::traversal, "round '" + spec.name + "': tour array was not shuffled by tag");
      }
      std::vector<bool> visited(n, false);
      std::int64_t tag = 0;
      for (std::size_t k = 0; k < n; ++k) {
        visited[static_cast<std::size_t>(tag)] = true;
        const Record rec = read_cell((*layout)(static_cast<std::uint64_t>(tag)));
        if (spec.tag_of(rec) != tag) {
          throw Error(Errc::traversal, "cell at position of tag " + std::to_string(tag) +
                                           " holds tag " + std::to_string(spec.tag_of(rec)));
        }
        append_output(spec.step(rec));
        const std::int64_t next = spec.next_tag(rec);
        const bool last = k + 1 == n;
        if (next < 0 || static_cast<std::uint64_t>(next) >= n) {
          throw Error(Errc::traversal, "dangling next " + std::to_string(next) + " at tag " + std::to_string(tag));
        }
        if (!last && next == 0) {
          throw Error(Errc::traversal, "tour closes at tag " + std::to_string(tag) + " after " +
                                           std::to_string(k + 1) + " of " + std::to_string(n) + " edges");
        }
        if (last && next != 0) {
          throw Error(Errc::traversal, "tour does not return to tag 0 (tag " + std::to_string(tag) +
                                           " points to " + std::to_string(next) + ")");
        }
        if (!last && visited[static_cast<std::size_t>(next)]) {
          throw Error(Errc::traversal, "tour revisits tag " + std::to_string(next) + " from tag " +
                                           std::to_string(tag));
        }
        tag = next;
      }
    }
    current = end_round();
  }
  return current;
}

ProgramResult run_program(const ScanProgram& program, std::span<const Record> input,
                          const RuntimeConfig& config) {
  ScanRuntime rt(config);
  ServerArray s = rt.upload(input);
  ServerArray out = rt.run(program, std::move(s));
  ProgramResult result;
  result.output = rt.download(out);
  result.trace = rt.take_trace();
  return result;
}

}  // namespace odraw
