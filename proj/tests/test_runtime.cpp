#include <algorithm>
#include <sstream>

#include "odraw/prims.hpp"
#include "odraw/runtime.hpp"
#include "odraw/sorting_network.hpp"
#include "support.hpp"

using namespace odraw;

namespace {

Record value_record(std::int64_t key, std::int64_t v = 0) {
  KeyedValue kv;
  kv.key1 = key;
  kv.values[0] = v;
  return kv.encode();
}

std::vector<Record> values(std::initializer_list<std::int64_t> keys) {
  std::vector<Record> out;
  for (auto k : keys) out.push_back(value_record(k, k * 10));
  return out;
}

std::int64_t key_of(const Record& r) { return r.is_dummy() ? kDummyName : KeyedValue::decode(r).key1; }

RoundSpec identity_round() {
  RoundSpec s;
  s.name = "identity";
  s.step = [](const Record& r) { return r; };
  return s;
}

}  // namespace

TEST_CASE("read_cell enforces the single-touch rule") {
  ScanRuntime rt(RuntimeConfig{});
  const auto in = values({1, 2, 3, 4});
  rt.begin_round(rt.upload(in));
  rt.read_cell(3);
  rt.append_output(Record::dummy());
  CHECK_ERRC(rt.read_cell(3), Errc::round_discipline);
  CHECK_ERRC(rt.read_cell(4), Errc::out_of_range);
}

TEST_CASE("append_output discipline") {
  const auto in = values({1, 2, 3});
  {
    ScanRuntime rt(RuntimeConfig{});
    rt.begin_round(rt.upload(in));
    rt.read_cell(0);
    rt.append_output(Record::dummy());
    CHECK_ERRC(rt.append_output(Record::dummy()), Errc::round_discipline);
  }
  {
    ScanRuntime rt(RuntimeConfig{});
    rt.begin_round(rt.upload(in));
    rt.read_cell(0);
    rt.read_cell(1);  // item 0 produced nothing
    rt.append_output(Record::dummy());
    rt.read_cell(2);
    rt.append_output(Record::dummy());
    try {
      rt.end_round();
      FAIL("expected violation");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::round_discipline);
      CHECK(std::string(e.what()).find("index 0") != std::string::npos);
    }
  }
  {
    ScanRuntime rt(RuntimeConfig{});
    rt.begin_round(rt.upload(in));
    rt.read_cell(0);
    rt.append_output(Record::dummy());
    CHECK_ERRC(rt.end_round(), Errc::round_discipline);
  }
}

TEST_CASE("a round over n items writes n records") {
  ScanRuntime rt(RuntimeConfig{});
  const auto in = values({5, 6, 7, 8, 9});
  ScanProgram p{"id", {identity_round()}};
  const auto out = rt.run(p, rt.upload(in));
  CHECK(out.size() == 5);
  CHECK(rt.trace().reads == 5);
  CHECK(rt.trace().writes == 5);
  CHECK(rt.download(out) == in);
}

TEST_CASE("zero-round program is the identity with an empty trace") {
  const auto in = values({3, 1});
  const auto res = run_program(ScanProgram{"empty", {}}, in, RuntimeConfig{});
  CHECK(res.output == in);
  CHECK(res.trace.events.empty());
  CHECK(res.trace.rounds.empty());
}

TEST_CASE("workspace overflow is a capacity error") {
  RuntimeConfig cfg;
  cfg.workspace_words = 4;
  ScanRuntime rt(cfg);
  RoundSpec s = identity_round();
  s.state_words = 3;
  KeyedValue big;
  big.count = 3;
  const std::vector<Record> in{big.encode()};
  CHECK_ERRC(rt.run(ScanProgram{"big", {s}}, rt.upload(in)), Errc::capacity);
}

TEST_CASE("server-side tampering surfaces as an authentication error") {
  ScanRuntime rt(RuntimeConfig{});
  auto arr = rt.upload(values({1, 2}));
  arr.mutable_cell(1)[5] ^= 0x80;
  CHECK_ERRC(rt.run(ScanProgram{"id", {identity_round()}}, std::move(arr)), Errc::authentication);
}

TEST_CASE("oblivious sort matches std::sort on fuzzed arrays") {
  Rng rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % 256;
    std::vector<Record> in;
    std::vector<std::int64_t> keys;
    for (std::size_t i = 0; i < n; ++i) {
      const auto k = static_cast<std::int64_t>(rng() % 1000);
      in.push_back(value_record(k));
      keys.push_back(k);
    }
    ScanRuntime rt(RuntimeConfig{static_cast<std::uint64_t>(trial), CipherKind::mask, 8});
    const auto out = rt.download(oblivious_sort(rt, rt.upload(in), name_key));
    std::sort(keys.begin(), keys.end());
    std::vector<std::int64_t> got;
    for (const auto& r : out) got.push_back(key_of(r));
    REQUIRE(got == keys);
  }
}

TEST_CASE("sort trace is the comparator schedule regardless of contents") {
  auto run = [](std::vector<Record> in) {
    ScanRuntime rt(RuntimeConfig{3});
    oblivious_sort(rt, rt.upload(in), name_key);
    return rt.take_trace();
  };
  const auto a = run(values({9, 8, 7, 6, 5, 4, 3}));
  const auto b = run(values({1, 2, 3, 4, 5, 6, 7}));
  CHECK(a.events == b.events);
  CHECK(a.shuffles == 2 * schedule_length(7));
}

TEST_CASE("all-dummy arrays sort to themselves") {
  ScanRuntime rt(RuntimeConfig{});
  const std::vector<Record> in(5, Record::dummy());
  CHECK(rt.download(oblivious_sort(rt, rt.upload(in), name_key)) == in);
}

TEST_CASE("shuffle arrangement is the prp on scan ordinals") {
  const std::uint64_t seed = 99;
  ScanRuntime rt(RuntimeConfig{seed});
  std::vector<Record> in;
  for (int i = 0; i < 8; ++i) in.push_back(value_record(i));
  const auto shuffled = oblivious_shuffle(rt, rt.upload(in));
  const auto out = rt.download(shuffled);
  Prp expected(derive_key(seed, 1000), 8);
  for (std::uint64_t i = 0; i < 8; ++i) CHECK(key_of(out[expected(i)]) == static_cast<std::int64_t>(i));
  REQUIRE(shuffled.layout().has_value());
  CHECK(shuffled.layout()->key() == expected.key());

  ScanRuntime single(RuntimeConfig{seed});
  CHECK(single.download(oblivious_shuffle(single, single.upload(values({4})))) == values({4}));
}

TEST_CASE("shuffles under different seeds preserve the multiset") {
  std::vector<Record> in;
  for (int i = 0; i < 20; ++i) in.push_back(value_record(i % 7));
  auto sorted_keys = [](const std::vector<Record>& v) {
    std::vector<std::int64_t> k;
    for (const auto& r : v) k.push_back(key_of(r));
    std::sort(k.begin(), k.end());
    return k;
  };
  ScanRuntime a(RuntimeConfig{1});
  ScanRuntime b(RuntimeConfig{2});
  const auto oa = a.download(oblivious_shuffle(a, a.upload(in)));
  const auto ob = b.download(oblivious_shuffle(b, b.upload(in)));
  CHECK(sorted_keys(oa) == sorted_keys(in));
  CHECK(sorted_keys(ob) == sorted_keys(in));
  CHECK_FALSE(oa == ob);
}

TEST_CASE("compaction moves reals first in name order") {
  ScanRuntime rt(RuntimeConfig{});
  const std::vector<Record> in{Record::dummy(), value_record(4), Record::dummy(), value_record(2)};
  const auto out = rt.download(oblivious_compact(rt, rt.upload(in)));
  CHECK(key_of(out[0]) == 2);
  CHECK(key_of(out[1]) == 4);
  CHECK(out[2].is_dummy());
  CHECK(out[3].is_dummy());

  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 256;
    std::vector<Record> mix;
    std::vector<std::int64_t> reals;
    for (std::size_t i = 0; i < n; ++i) {
      if (rng() % 3 == 0) {
        mix.push_back(Record::dummy());
      } else {
        const auto k = static_cast<std::int64_t>(rng() % 500);
        mix.push_back(value_record(k));
        reals.push_back(k);
      }
    }
    std::sort(reals.begin(), reals.end());
    ScanRuntime r2(RuntimeConfig{static_cast<std::uint64_t>(trial)});
    const auto got = r2.download(oblivious_compact(r2, r2.upload(mix)));
    for (std::size_t i = 0; i < n; ++i) {
      if (i < reals.size()) {
        REQUIRE(key_of(got[i]) == reals[i]);
      } else {
        REQUIRE(got[i].is_dummy());
      }
    }
  }
}

TEST_CASE("compaction rejects records without a node name") {
  ScanRuntime rt(RuntimeConfig{});
  TourEdge e;
  const std::vector<Record> in{e.encode(), value_record(1)};
  CHECK_ERRC(oblivious_compact(rt, rt.upload(in)), Errc::key);
}

TEST_CASE("trace dump round trips") {
  ScanRuntime rt(RuntimeConfig{5});
  auto arr = oblivious_shuffle(rt, rt.upload(values({3, 2, 1})));
  rt.run(ScanProgram{"id", {identity_round()}}, std::move(arr));
  const TraceLog log = rt.take_trace();
  std::stringstream ss;
  write_trace(ss, log);
  const TraceLog back = read_trace(ss);
  CHECK(back.events == log.events);
  CHECK(back.rounds == log.rounds);
  CHECK(back.reads == log.reads);
  std::stringstream bad("0 read x\n");
  CHECK_ERRC(read_trace(bad), Errc::parse);
}
