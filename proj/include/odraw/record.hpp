#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>

#include "odraw/error.hpp"

namespace odraw {

// Node names are carried on the server as their rank in the sorted name table
// of the instance, so integer order equals name order.
using NodeId = std::int64_t;

// Reserved name of dummy records; compares greater than every real name.
inline constexpr NodeId kDummyName = std::numeric_limits<std::int64_t>::max();

inline constexpr std::size_t kMaxRecordWords = 40;

enum class RecordKind : std::int64_t {
  dummy = 0,
  tour_edge = 1,
  keyed_value = 2,
  coord = 3,
  rect = 4,
  point = 5,
  dag_edge = 6,
};

// Plaintext record as it exists inside client workspace. `words` is the
// serialized payload; `logical` is the number of abstract workspace words
// (names, counters, coordinates, tags) the record occupies.
struct Record {
  RecordKind kind = RecordKind::dummy;
  std::uint32_t size = 0;
  std::uint32_t logical = 1;
  // Only the first `size` words are meaningful.
  std::array<std::int64_t, kMaxRecordWords> words;

  static Record dummy() { return Record{}; }

  bool is_dummy() const noexcept { return kind == RecordKind::dummy; }

  void push(std::int64_t w) {
    if (size >= kMaxRecordWords) {
      throw Error(Errc::serialization, "record exceeds maximum word count");
    }
    words[size++] = w;
  }

  std::int64_t at(std::size_t i) const {
    if (i >= size) throw Error(Errc::serialization, "record word index past end");
    return words[i];
  }

  std::span<const std::int64_t> view() const { return {words.data(), size}; }

  friend bool operator==(const Record& a, const Record& b) {
    if (a.kind != b.kind || a.size != b.size || a.logical != b.logical) return false;
    for (std::uint32_t i = 0; i < a.size; ++i) {
      if (a.words[i] != b.words[i]) return false;
    }
    return true;
  }
};

}  // namespace odraw
