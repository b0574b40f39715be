#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "odraw/rational.hpp"
#include "odraw/record.hpp"

namespace odraw {

enum class Direction : std::int64_t { down = 0, up = 1 };

// Optional per-program annotation slots on tour edges.
enum class Slot : std::uint8_t {
  subsize,
  parent_subsize,
  depth,
  parent_area,
  child_area,
  b,
  b_prime,
  sibling_b,
  sibling_b_prime,
  sibling_snk,
  indegree,
  parent_spq,
  child_spq,
  src,
  snk,
  is_solid,
  width,
  refx,
  level,
  stamp,
  at_root,
  count_,
};

inline constexpr std::size_t kSlotCount = static_cast<std::size_t>(Slot::count_);

enum class SpqType : std::int64_t { s = 0, p = 1, q = 2 };

// One item of a duplicated-edge Euler tour.
struct TourEdge {
  std::int64_t tag = 0;
  std::int64_t next = 0;
  Direction direction = Direction::down;
  NodeId parent = 0;
  NodeId child = 0;
  std::int64_t child_num = 1;  // 1-based ordinal among siblings
  std::int64_t parent_outdeg = 0;
  std::int64_t child_outdeg = 0;

  bool has(Slot s) const noexcept { return (mask_ >> static_cast<unsigned>(s)) & 1U; }
  std::int64_t get(Slot s) const;
  std::int64_t get_or(Slot s, std::int64_t fallback) const noexcept {
    return has(s) ? values_[static_cast<std::size_t>(s)] : fallback;
  }
  void set(Slot s, std::int64_t v) noexcept {
    values_[static_cast<std::size_t>(s)] = v;
    mask_ |= 1U << static_cast<unsigned>(s);
  }
  void clear(Slot s) noexcept { mask_ &= ~(1U << static_cast<unsigned>(s)); }
  std::uint32_t slot_mask() const noexcept { return mask_; }

  bool is_down() const noexcept { return direction == Direction::down; }

  Record encode() const;
  static TourEdge decode(const Record& r);

  friend bool operator==(const TourEdge& a, const TourEdge& b);

 private:
  std::uint32_t mask_ = 0;
  std::array<std::int64_t, kSlotCount> values_{};
};

std::int64_t tour_tag(const Record& r);
std::int64_t tour_next(const Record& r);

// Value keyed by one or two integers: (node, 0) for node-keyed lists,
// (parent, child ordinal) for sibling lookups.
struct KeyedValue {
  std::int64_t key1 = 0;
  std::int64_t key2 = 0;
  std::array<std::int64_t, 3> values{};
  std::uint8_t count = 1;

  Record encode() const;
  static KeyedValue decode(const Record& r);
};

enum class Axis : std::int64_t { x = 0, y = 1 };

struct CoordTuple {
  NodeId node = kDummyName;
  std::int64_t value = 0;
  Axis axis = Axis::x;

  Record encode() const;
  static CoordTuple decode(const Record& r);
};

struct PointRecord {
  NodeId node = 0;
  Rational x;
  Rational y;

  Record encode() const;
  static PointRecord decode(const Record& r);
};

struct RectRecord {
  NodeId node = 0;
  Rational px, py, qx, qy;

  Record encode() const;
  static RectRecord decode(const Record& r);
};

struct DagEdge {
  NodeId from = 0;
  NodeId to = 0;
  std::int64_t out_rank = 1;
  std::int64_t in_rank = 1;
  std::int64_t indegree = 1;   // of `to`
  std::int64_t outdegree = 1;  // of `from`
  bool left_spanning = false;
  bool right_spanning = false;

  Record encode() const;
  static DagEdge decode(const Record& r);
  friend bool operator==(const DagEdge&, const DagEdge&) = default;
};

// Name used for compaction order: word 0 of keyed kinds, kDummyName for dummies.
NodeId primary_name(const Record& r);

void expect_kind(const Record& r, RecordKind kind, const char* what);

}  // namespace odraw
