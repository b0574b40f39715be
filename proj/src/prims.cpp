#include "odraw/prims.hpp"

#include <memory>
#include <optional>

namespace odraw {

ServerArray oblivious_sort(ScanRuntime& rt, ServerArray array, const SortKeyFn& key) {
  return rt.sort(std::move(array), key);
}

ServerArray oblivious_shuffle(ScanRuntime& rt, ServerArray array) {
  return rt.shuffle(std::move(array), Prepare::shuffle_by_ordinal);
}

SortKey name_key(const Record& r) {
  if (r.is_dummy()) return {kDummyName, 0, 0, 0};
  const NodeId name = primary_name(r);
  const std::int64_t second = r.kind == RecordKind::point || r.kind == RecordKind::rect ? 0 : r.at(1);
  return {name, second, 0, 0};
}

SortKey tag_key(const Record& r) {
  if (r.is_dummy()) return {1, 0, 0, 0};
  return {0, tour_tag(r), 0, 0};
}

ServerArray oblivious_compact(ScanRuntime& rt, ServerArray array, const SortKeyFn& key) {
  return rt.sort(std::move(array), [&key](const Record& r) {
    if (r.is_dummy()) return SortKey{1, 0, 0, 0};
    const SortKey k = key(r);
    return SortKey{0, k[0], k[1], k[2]};
  });
}

ServerArray oblivious_join(ScanRuntime& rt, ServerArray edges, ServerArray values, const JoinSpec& spec) {
  const std::size_t edge_count = edges.size();
  ServerArray merged = ScanRuntime::concat(std::move(values), edges);

  struct State {
    bool have = false;
    KeyedValue last;
  };
  auto state = std::make_shared<State>();

  ScanProgram program;
  program.name = spec.name;
  RoundSpec merge;
  merge.name = spec.name + ": merge";
  merge.prepare = Prepare::sort;
  merge.sort_key = [&spec](const Record& r) -> SortKey {
    if (r.is_dummy()) return {kDummyName, kDummyName, 2, 0};
    if (r.kind == RecordKind::keyed_value) {
      const KeyedValue v = KeyedValue::decode(r);
      return {v.key1, v.key2, 0, 0};
    }
    const JoinKey k = spec.edge_key(r);
    return {k.key1, k.key2, 1, 0};
  };
  merge.state_words = 2 + 3 + 1;
  merge.step = [&spec, state](const Record& r) -> Record {
    if (r.is_dummy()) return Record::dummy();
    if (r.kind == RecordKind::keyed_value) {
      const KeyedValue v = KeyedValue::decode(r);
      if (state->have && state->last.key1 == v.key1 && state->last.key2 == v.key2) {
        throw Error(Errc::ambiguity, "join '" + spec.name + "': duplicate value key (" +
                                         std::to_string(v.key1) + ", " + std::to_string(v.key2) + ")");
      }
      state->have = true;
      state->last = v;
      return Record::dummy();
    }
    const JoinKey k = spec.edge_key(r);
    const bool match = state->have && state->last.key1 == k.key1 && state->last.key2 == k.key2;
    return spec.apply(r, match ? &state->last : nullptr);
  };
  program.rounds.push_back(std::move(merge));

  ServerArray joined = rt.run(program, std::move(merged));
  ServerArray compacted = oblivious_compact(rt, std::move(joined), spec.result_key);
  return ScanRuntime::truncate(std::move(compacted), edge_count);
}

}  // namespace odraw
