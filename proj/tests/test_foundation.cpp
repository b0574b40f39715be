#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "odraw/cipher.hpp"
#include "odraw/prp.hpp"
#include "odraw/rational.hpp"
#include "odraw/records.hpp"
#include "odraw/sorting_network.hpp"
#include "support.hpp"

using namespace odraw;

namespace {

Record random_record(Rng& rng) {
  Record r;
  r.kind = static_cast<RecordKind>(rng() % 7);
  const auto n = rng() % (kMaxRecordWords + 1);
  for (std::size_t i = 0; i < n; ++i) r.push(static_cast<std::int64_t>(rng()));
  r.logical = static_cast<std::uint32_t>(1 + rng() % 20);
  return r;
}

}  // namespace

TEST_CASE("cipher round trip over fuzzed records") {
  for (auto kind : {CipherKind::mask, CipherKind::sodium}) {
    auto cipher = make_cipher(kind, 7);
    CellCodec codec(*cipher, kMaxRecordWords);
    Rng rng(11);
    std::size_t width = 0;
    for (int i = 0; i < 1000; ++i) {
      const Record r = random_record(rng);
      const SealedCell c = codec.seal(r, rng);
      if (width == 0) width = c.bytes.size();
      CHECK(c.bytes.size() == width);
      CHECK(codec.open(c) == r);
    }
  }
}

TEST_CASE("sealing the same record twice gives different cells") {
  auto cipher = make_cipher(CipherKind::sodium, 1);
  CellCodec codec(*cipher, 8);
  Rng rng(3);
  Record r;
  r.push(42);
  CHECK_FALSE(codec.seal(r, rng) == codec.seal(r, rng));
}

TEST_CASE("tampered, truncated and foreign cells are rejected") {
  for (auto kind : {CipherKind::mask, CipherKind::sodium}) {
    auto cipher = make_cipher(kind, 5);
    auto other = make_cipher(kind, 6);
    CellCodec codec(*cipher, 8);
    CellCodec foreign(*other, 8);
    Rng rng(2);
    Record r;
    r.push(1);
    r.push(2);
    SealedCell c = codec.seal(r, rng);

    SealedCell flipped = c;
    flipped.bytes[flipped.bytes.size() / 2] ^= 0x01;
    CHECK_ERRC(codec.open(flipped), Errc::authentication);

    SealedCell cut = c;
    cut.bytes.pop_back();
    CHECK_ERRC(codec.open(cut), Errc::authentication);

    CHECK_ERRC(foreign.open(c), Errc::authentication);
  }
}

TEST_CASE("records wider than the codec are rejected") {
  auto cipher = make_cipher(CipherKind::mask, 5);
  CellCodec codec(*cipher, 2);
  Rng rng(1);
  Record r;
  for (int i = 0; i < 3; ++i) r.push(i);
  CHECK_ERRC(codec.seal(r, rng), Errc::serialization);
}

TEST_CASE("prp is a bijection on small domains") {
  for (std::uint64_t n = 1; n <= 512; n += (n < 40 ? 1 : 37)) {
    Prp p(derive_key(9, n), n);
    std::vector<bool> hit(n, false);
    for (std::uint64_t x = 0; x < n; ++x) {
      const auto y = p(x);
      REQUIRE(y < n);
      CHECK_FALSE(hit[y]);
      hit[y] = true;
    }
  }
  Prp p(1, 10);
  CHECK_ERRC(p(10), Errc::out_of_range);
}

TEST_CASE("prp depends on the key") {
  Prp a(1, 1000);
  Prp b(2, 1000);
  int same = 0;
  for (std::uint64_t x = 0; x < 1000; ++x) same += a(x) == b(x);
  CHECK(same < 50);
}

TEST_CASE("odd-even merge network on four inputs") {
  const auto s = build_schedule(4);
  const ComparatorSchedule expected{{0, 1}, {2, 3}, {0, 2}, {1, 3}, {1, 2}};
  CHECK(s == expected);
  CHECK(schedule_length(1) == 0);
  CHECK(schedule_length(2) == 1);
  CHECK(schedule_length(8) == 19);
  CHECK(schedule_length(16) == 63);
}

TEST_CASE("network sorts every 0-1 input up to 16") {
  for (std::size_t n = 1; n <= 16; ++n) {
    const auto s = build_schedule(n);
    for (std::uint32_t bits = 0; bits < (1U << n); ++bits) {
      std::vector<int> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = (bits >> i) & 1U;
      for (const auto& c : s) {
        REQUIRE(c.lo < c.hi);
        REQUIRE(c.hi < n);
        if (v[c.hi] < v[c.lo]) std::swap(v[c.lo], v[c.hi]);
      }
      REQUIRE(std::is_sorted(v.begin(), v.end()));
    }
  }
}

TEST_CASE("network sorts random inputs of awkward lengths") {
  Rng rng(4);
  for (std::size_t n : {17u, 100u, 129u, 1000u}) {
    std::vector<std::uint64_t> v(n);
    for (auto& x : v) x = rng() % 50;
    for_each_comparator(n, [&](std::size_t lo, std::size_t hi) {
      if (v[hi] < v[lo]) std::swap(v[lo], v[hi]);
    });
    CHECK(std::is_sorted(v.begin(), v.end()));
  }
}

TEST_CASE("rational arithmetic and serialization") {
  const Rational a(1, 3);
  const Rational b(-2, 6);
  CHECK(a + b == Rational(0));
  CHECK((a * Rational(3)).is_integer());
  CHECK((a / Rational(2)).str() == "1/6");
  CHECK(b.str() == "-1/3");
  CHECK(Rational(7, -14).str() == "-1/2");
  CHECK(Rational::parse("-10/4") == Rational(-5, 2));
  CHECK(Rational::parse("3") == Rational(3));
  CHECK_ERRC(Rational::parse("3/"), Errc::parse);
  CHECK_ERRC(Rational::parse("x"), Errc::parse);
  CHECK(Rational(1, 2) < Rational(2, 3));
  CHECK(Rational(5, 4).decimal() == "1.250000");

  for (const Rational& q : {Rational(0), Rational(-17, 5), Rational(123456789, 1000000007)}) {
    std::array<std::int64_t, Rational::kWords> w{};
    q.encode(w);
    CHECK(Rational::decode(w) == q);
  }
  Rational big(1);
  for (int i = 0; i < 4; ++i) big = big * Rational(std::numeric_limits<std::int64_t>::max());
  std::array<std::int64_t, Rational::kWords> w{};
  (-big).encode(w);
  CHECK(Rational::decode(w) == -big);
  CHECK_ERRC(big * big, Errc::overflow);
}

TEST_CASE("tour edge codec keeps slots") {
  TourEdge e;
  e.tag = 3;
  e.next = 4;
  e.direction = Direction::up;
  e.parent = 1;
  e.child = 2;
  e.child_num = 2;
  e.parent_outdeg = 2;
  e.child_outdeg = 0;
  e.set(Slot::subsize, 5);
  e.set(Slot::stamp, -1);
  const Record r = e.encode();
  CHECK(r.logical == 10);
  const TourEdge d = TourEdge::decode(r);
  CHECK(d == e);
  CHECK(d.get(Slot::subsize) == 5);
  CHECK(d.get_or(Slot::depth, 9) == 9);
  CHECK_ERRC(d.get(Slot::depth), Errc::malformed_tour);
  CHECK(tour_tag(r) == 3);
  CHECK(tour_next(r) == 4);
}

TEST_CASE("rect and point codecs") {
  RectRecord rr{4, Rational(0), Rational(1, 2), Rational(3, 7), Rational(1)};
  const RectRecord d = RectRecord::decode(rr.encode());
  CHECK(d.node == 4);
  CHECK(d.py == Rational(1, 2));
  CHECK(d.qx == Rational(3, 7));
  PointRecord p{2, Rational(5), Rational(-1, 3)};
  const PointRecord q = PointRecord::decode(p.encode());
  CHECK(q.y == Rational(-1, 3));
  CHECK(primary_name(p.encode()) == 2);
  CHECK(primary_name(Record::dummy()) == kDummyName);
  CHECK_ERRC(TourEdge::decode(p.encode()), Errc::key);
}
