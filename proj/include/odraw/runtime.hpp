#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "odraw/cipher.hpp"
#include "odraw/prp.hpp"
#include "odraw/record.hpp"
#include "odraw/trace.hpp"
#include "odraw/workspace.hpp"

namespace odraw {

enum class ArrayRole { input, output };

// Server-held array of equal-length sealed cells, stored contiguously.
class ServerArray {
 public:
  ServerArray() = default;

  std::size_t size() const noexcept { return n_; }
  std::size_t cell_bytes() const noexcept { return cell_bytes_; }
  ArrayRole role() const noexcept { return role_; }

  std::span<const std::uint8_t> cell(std::size_t i) const;
  SealedCell copy_cell(std::size_t i) const;
  // Server-side tampering hook for tests.
  std::span<std::uint8_t> mutable_cell(std::size_t i);

  // Permutation that placed the cell of tag t at position layout(t), when the
  // array was last arranged by a tag-keyed shuffle.
  const std::optional<Prp>& layout() const noexcept { return layout_; }

 private:
  friend class ScanRuntime;
  std::vector<std::uint8_t> data_;
  std::size_t n_ = 0;
  std::size_t cell_bytes_ = 0;
  ArrayRole role_ = ArrayRole::input;
  std::optional<Prp> layout_;
};

using SortKey = std::array<std::int64_t, 4>;
using SortKeyFn = std::function<SortKey(const Record&)>;
using TagFn = std::function<std::int64_t(const Record&)>;
using StepFn = std::function<Record(const Record&)>;

enum class ScanOrder {
  sequential,  // positions 0..n-1
  tour,        // start at layout(0), continue at layout(next) of each item
};

struct RoundSpec {
  std::string name;
  Prepare prepare = Prepare::none;
  SortKeyFn sort_key;  // Prepare::sort
  TagFn tag_of;        // Prepare::shuffle_by_tag and ScanOrder::tour
  ScanOrder order = ScanOrder::sequential;
  TagFn next_tag;      // ScanOrder::tour
  std::size_t state_words = 0;
  StepFn step;
};

// A declared sequence of rounds. The number of rounds and the one-output-per-
// read arity are fixed by construction; only the step closures see contents.
struct ScanProgram {
  std::string name;
  std::vector<RoundSpec> rounds;
};

struct RuntimeConfig {
  std::uint64_t seed = 0;
  CipherKind cipher = CipherKind::mask;
  std::size_t record_words = kMaxRecordWords;
  std::size_t workspace_words = 32;
  TraceMode trace_mode = TraceMode::full;
};

// Simulated client/server pair for the compressed-scanning model. Single
// threaded; each instance owns its cipher, randomness, workspace and trace.
class ScanRuntime {
 public:
  explicit ScanRuntime(const RuntimeConfig& config);

  const RuntimeConfig& config() const noexcept { return config_; }
  const CellCodec& codec() const noexcept { return codec_; }
  Workspace& workspace() noexcept { return workspace_; }
  const TraceLog& trace() const noexcept { return trace_; }
  TraceLog take_trace();

  // Initial placement and final retrieval; neither is part of any round.
  ServerArray upload(std::span<const Record> records);
  std::vector<Record> download(const ServerArray& array) const;

  // Server-side length operations; they touch no cell contents.
  static ServerArray concat(ServerArray a, const ServerArray& b);
  static ServerArray truncate(ServerArray a, std::size_t n);

  // Oblivious shuffle: one keyed pass assigning pi(tag) or pi(ordinal) to every
  // cell, then the sorting network on that key. Opens a new round.
  ServerArray shuffle(ServerArray array, Prepare by, const TagFn& tag_of = {});
  // Oblivious sort by record key. Opens a new round.
  ServerArray sort(ServerArray array, const SortKeyFn& key);

  void begin_round(ServerArray input);
  Record read_cell(std::size_t index);
  void append_output(const Record& record);
  ServerArray end_round();

  ServerArray run(const ScanProgram& program, ServerArray input);

 private:
  using EnvelopeKeyFn = std::function<SortKey(const Record&, std::int64_t)>;

  void open_round(std::size_t length, Prepare prepare);
  void close_round_peak();
  void log(EventKind kind, std::uint64_t index);
  void network_sort(ServerArray& array, const EnvelopeKeyFn& key);
  [[noreturn]] void violation(const std::string& what, std::uint64_t index) const;

  RuntimeConfig config_;
  std::unique_ptr<Cipher> cipher_;
  CellCodec codec_;
  Rng rng_;
  Workspace workspace_;
  TraceLog trace_;
  std::uint64_t shuffles_done_ = 0;

  struct ActiveRound {
    ServerArray input;
    ServerArray output;
    std::vector<bool> touched;
    std::size_t reads = 0;
    std::size_t writes = 0;
    bool item_open = false;
    std::uint64_t item_index = 0;
    std::uint32_t item_words = 0;
    std::optional<std::uint64_t> first_missing;
  };
  std::optional<ActiveRound> active_;
};

struct ProgramResult {
  std::vector<Record> output;
  TraceLog trace;
};

ProgramResult run_program(const ScanProgram& program, std::span<const Record> input,
                          const RuntimeConfig& config);

}  // namespace odraw
