#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "odraw/instance.hpp"
#include "odraw/oracle.hpp"
#include "odraw/runtime.hpp"

namespace odraw {

enum class Algorithm { subtree_sizes, depths, dominance, dominance_compressed, treemap, brect, delta };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::subtree_sizes, Algorithm::depths,
                                               Algorithm::dominance,     Algorithm::dominance_compressed,
                                               Algorithm::treemap,       Algorithm::brect,
                                               Algorithm::delta};

std::string_view to_string(Algorithm a) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view name);

enum class InstanceKind { tree, dag, spq };
std::string_view to_string(InstanceKind k) noexcept;

using Instance = std::variant<PlainTree, PlainDag, PlainSpq>;

InstanceKind kind_of(const Instance& instance) noexcept;
InstanceKind required_kind(Algorithm a) noexcept;
std::size_t instance_size(const Instance& instance);

struct Canvas {
  Rational width{10};
  Rational height{4};
};

struct AlgorithmOutput {
  std::optional<NodeValues> values;
  std::optional<Drawing> drawing;
  friend bool operator==(const AlgorithmOutput&, const AlgorithmOutput&) = default;
};

// Workspace budget in words for a run on an instance of size n.
std::size_t algorithm_budget(Algorithm a, std::size_t n);

// Sealed cell width in words: the widest record the program produces.
std::size_t algorithm_record_words(Algorithm a) noexcept;

// Runs the oblivious program with the algorithm's workspace budget and cell
// width (the config's workspace_words and record_words are overridden). Throws Error(key) when the
// instance kind does not fit the algorithm.
AlgorithmOutput run_algorithm(Algorithm a, const Instance& instance, RuntimeConfig config, const Canvas& canvas = {},
                              TraceLog* trace = nullptr);

AlgorithmOutput reference_output(Algorithm a, const Instance& instance, const Canvas& canvas = {});

// Equality with the reference plus the drawing's own property checks.
Report verify_output(Algorithm a, const Instance& instance, const AlgorithmOutput& out, const Canvas& canvas = {});

}  // namespace odraw
