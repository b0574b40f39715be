#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "odraw/instance.hpp"

namespace odraw {

enum class DominanceMode { basic, compressed };

// Plain, non-oblivious reference computations. No workspace accounting.
NodeValues reference_subtree_sizes(const PlainTree& tree);
NodeValues reference_depths(const PlainTree& tree);
Drawing reference_dominance(const PlainDag& dag, DominanceMode mode);
Drawing reference_treemap(const PlainTree& tree, const Rational& width, const Rational& height);
Drawing reference_delta(const PlainSpq& spq);
Drawing reference_brect(const PlainTree& tree);

// b and b' of every decomposition-tree node, by tree NodeId.
struct DeltaSizes {
  std::vector<std::int64_t> b;
  std::vector<std::int64_t> b_prime;
};
DeltaSizes reference_delta_sizes(const PlainSpq& spq);

struct Report {
  std::vector<std::string> violations;
  bool ok() const noexcept { return violations.empty(); }
};

// u reaches v iff x(u) <= x(v) and y(u) <= y(v), for all ordered pairs; also
// checks that no two nodes share both coordinates.
Report check_dominance_property(const Drawing& drawing, const PlainDag& dag);
Report check_treemap(const Drawing& drawing, const PlainTree& tree, const Rational& width, const Rational& height);
Report check_delta(const Drawing& drawing, const PlainSpq& spq);
Report check_brect(const Drawing& drawing, const PlainTree& tree);

// Random instances; equal (n, seed) give identical instances.
PlainTree generate_tree(std::size_t n, std::uint64_t seed, bool with_areas = false);
PlainTree generate_binary_tree(std::size_t n, std::uint64_t seed);
PlainTree generate_complete_binary_tree(std::size_t n, bool with_areas = false);
// `q_leaves` edges; reduced instances have no Q child under a P node.
PlainSpq generate_spq(std::size_t q_leaves, std::uint64_t seed, bool reduced = false);
PlainDag generate_reduced_sp_dag(std::size_t q_leaves, std::uint64_t seed);

}  // namespace odraw
