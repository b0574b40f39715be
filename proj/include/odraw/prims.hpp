#pragma once

#include <functional>
#include <string>
#include <utility>

#include "odraw/records.hpp"
#include "odraw/runtime.hpp"

namespace odraw {

ServerArray oblivious_sort(ScanRuntime& rt, ServerArray array, const SortKeyFn& key);

// Shuffle by scan ordinal: the record at position i moves to pi(i).
ServerArray oblivious_shuffle(ScanRuntime& rt, ServerArray array);

// (name, second word) for keyed kinds; dummies carry kDummyName and sort last.
// Throws Error(key) for kinds without a node name.
SortKey name_key(const Record& r);

// Real tour edges by tag, dummies last.
SortKey tag_key(const Record& r);

// Reals first, sorted by `key` (name_key by default), dummies last.
ServerArray oblivious_compact(ScanRuntime& rt, ServerArray array, const SortKeyFn& key = name_key);

struct JoinKey {
  std::int64_t key1 = 0;
  std::int64_t key2 = 0;
};

struct JoinSpec {
  std::string name;
  // Lookup key of an edge record.
  std::function<JoinKey(const Record& edge)> edge_key;
  // Annotated edge; `value` is null when no entry matches.
  std::function<Record(const Record& edge, const KeyedValue* value)> apply;
  // Order of the result; tag order by default.
  SortKeyFn result_key = tag_key;
};

// Attaches KeyedValue entries to edges: one sort of the concatenation, one
// merged scan, one compaction sort. The trace depends on |edges| + |values|
// only. Duplicate value keys raise Error(ambiguity).
ServerArray oblivious_join(ScanRuntime& rt, ServerArray edges, ServerArray values, const JoinSpec& spec);

}  // namespace odraw
