#include "odraw/records.hpp"

#include <bit>
#include <string>

namespace odraw {

void expect_kind(const Record& r, RecordKind kind, const char* what) {
  if (r.kind != kind) {
    throw Error(Errc::key, std::string("expected ") + what + " record, found kind " +
                               std::to_string(static_cast<std::int64_t>(r.kind)));
  }
}

std::int64_t TourEdge::get(Slot s) const {
  if (!has(s)) {
    throw Error(Errc::malformed_tour, "tour edge " + std::to_string(tag) + " lacks annotation slot " +
                                          std::to_string(static_cast<int>(s)));
  }
  return values_[static_cast<std::size_t>(s)];
}

Record TourEdge::encode() const {
  Record r;
  r.kind = RecordKind::tour_edge;
  r.push(tag);
  r.push(next);
  r.push(static_cast<std::int64_t>(direction));
  r.push(parent);
  r.push(child);
  r.push(child_num);
  r.push(parent_outdeg);
  r.push(child_outdeg);
  r.push(mask_);
  for (std::size_t i = 0; i < kSlotCount; ++i) {
    if ((mask_ >> i) & 1U) r.push(values_[i]);
  }
  r.logical = 8 + static_cast<std::uint32_t>(std::popcount(mask_));
  return r;
}

TourEdge TourEdge::decode(const Record& r) {
  expect_kind(r, RecordKind::tour_edge, "tour edge");
  TourEdge e;
  e.tag = r.at(0);
  e.next = r.at(1);
  e.direction = static_cast<Direction>(r.at(2));
  e.parent = r.at(3);
  e.child = r.at(4);
  e.child_num = r.at(5);
  e.parent_outdeg = r.at(6);
  e.child_outdeg = r.at(7);
  e.mask_ = static_cast<std::uint32_t>(r.at(8));
  std::size_t w = 9;
  for (std::size_t i = 0; i < kSlotCount; ++i) {
    if ((e.mask_ >> i) & 1U) e.values_[i] = r.at(w++);
  }
  return e;
}

bool operator==(const TourEdge& a, const TourEdge& b) {
  if (a.tag != b.tag || a.next != b.next || a.direction != b.direction || a.parent != b.parent ||
      a.child != b.child || a.child_num != b.child_num || a.parent_outdeg != b.parent_outdeg ||
      a.child_outdeg != b.child_outdeg || a.mask_ != b.mask_) {
    return false;
  }
  for (std::size_t i = 0; i < kSlotCount; ++i) {
    if (((a.mask_ >> i) & 1U) && a.values_[i] != b.values_[i]) return false;
  }
  return true;
}

std::int64_t tour_tag(const Record& r) {
  expect_kind(r, RecordKind::tour_edge, "tour edge");
  return r.at(0);
}

std::int64_t tour_next(const Record& r) {
  expect_kind(r, RecordKind::tour_edge, "tour edge");
  return r.at(1);
}

Record KeyedValue::encode() const {
  Record r;
  r.kind = RecordKind::keyed_value;
  r.push(key1);
  r.push(key2);
  r.push(count);
  for (std::size_t i = 0; i < count; ++i) r.push(values[i]);
  r.logical = 2 + count;
  return r;
}

KeyedValue KeyedValue::decode(const Record& r) {
  expect_kind(r, RecordKind::keyed_value, "keyed value");
  KeyedValue v;
  v.key1 = r.at(0);
  v.key2 = r.at(1);
  v.count = static_cast<std::uint8_t>(r.at(2));
  if (v.count > v.values.size()) throw Error(Errc::serialization, "keyed value with too many values");
  for (std::size_t i = 0; i < v.count; ++i) v.values[i] = r.at(3 + i);
  return v;
}

Record CoordTuple::encode() const {
  Record r;
  r.kind = RecordKind::coord;
  r.push(node);
  r.push(static_cast<std::int64_t>(axis));
  r.push(value);
  r.logical = 3;
  return r;
}

CoordTuple CoordTuple::decode(const Record& r) {
  expect_kind(r, RecordKind::coord, "coordinate tuple");
  return CoordTuple{r.at(0), r.at(2), static_cast<Axis>(r.at(1))};
}

namespace {

void push_rational(Record& r, const Rational& q) {
  std::array<std::int64_t, Rational::kWords> buf{};
  q.encode(buf);
  for (auto w : buf) r.push(w);
}

Rational read_rational(const Record& r, std::size_t offset) {
  if (offset + Rational::kWords > r.size) throw Error(Errc::serialization, "truncated rational field");
  return Rational::decode(std::span<const std::int64_t, Rational::kWords>(r.words.data() + offset,
                                                                         Rational::kWords));
}

}  // namespace

Record PointRecord::encode() const {
  Record r;
  r.kind = RecordKind::point;
  r.push(node);
  push_rational(r, x);
  push_rational(r, y);
  r.logical = 3;
  return r;
}

PointRecord PointRecord::decode(const Record& r) {
  expect_kind(r, RecordKind::point, "point");
  return PointRecord{r.at(0), read_rational(r, 1), read_rational(r, 1 + Rational::kWords)};
}

Record RectRecord::encode() const {
  Record r;
  r.kind = RecordKind::rect;
  r.push(node);
  push_rational(r, px);
  push_rational(r, py);
  push_rational(r, qx);
  push_rational(r, qy);
  r.logical = 5;
  return r;
}

RectRecord RectRecord::decode(const Record& r) {
  expect_kind(r, RecordKind::rect, "rectangle");
  constexpr std::size_t w = Rational::kWords;
  return RectRecord{r.at(0), read_rational(r, 1), read_rational(r, 1 + w), read_rational(r, 1 + 2 * w),
                    read_rational(r, 1 + 3 * w)};
}

Record DagEdge::encode() const {
  Record r;
  r.kind = RecordKind::dag_edge;
  r.push(from);
  r.push(to);
  r.push(out_rank);
  r.push(in_rank);
  r.push(indegree);
  r.push(outdegree);
  r.push(left_spanning ? 1 : 0);
  r.push(right_spanning ? 1 : 0);
  r.logical = 8;
  return r;
}

DagEdge DagEdge::decode(const Record& r) {
  expect_kind(r, RecordKind::dag_edge, "dag edge");
  DagEdge e;
  e.from = r.at(0);
  e.to = r.at(1);
  e.out_rank = r.at(2);
  e.in_rank = r.at(3);
  e.indegree = r.at(4);
  e.outdegree = r.at(5);
  e.left_spanning = r.at(6) != 0;
  e.right_spanning = r.at(7) != 0;
  return e;
}

NodeId primary_name(const Record& r) {
  switch (r.kind) {
    case RecordKind::dummy: return kDummyName;
    case RecordKind::keyed_value:
    case RecordKind::coord:
    case RecordKind::point:
    case RecordKind::rect: return r.at(0);
    default: break;
  }
  throw Error(Errc::key, "record kind " + std::to_string(static_cast<std::int64_t>(r.kind)) +
                             " has no node-name key");
}

}  // namespace odraw
