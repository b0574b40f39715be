#include "odraw/algorithms.hpp"

#include "odraw/audit.hpp"
#include "odraw/dag_drawings.hpp"
#include "odraw/error.hpp"
#include "odraw/euler.hpp"
#include "odraw/tree_drawings.hpp"

namespace odraw {

std::string_view to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::subtree_sizes: return "subtree-sizes";
    case Algorithm::depths: return "depths";
    case Algorithm::dominance: return "dominance";
    case Algorithm::dominance_compressed: return "dominance-compressed";
    case Algorithm::treemap: return "treemap";
    case Algorithm::brect: return "brect";
    case Algorithm::delta: return "delta";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm a : kAllAlgorithms) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

std::string_view to_string(InstanceKind k) noexcept {
  switch (k) {
    case InstanceKind::tree: return "tree";
    case InstanceKind::dag: return "dag";
    case InstanceKind::spq: return "spq";
  }
  return "?";
}

InstanceKind kind_of(const Instance& instance) noexcept { return static_cast<InstanceKind>(instance.index()); }

InstanceKind required_kind(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::dominance:
    case Algorithm::dominance_compressed: return InstanceKind::dag;
    case Algorithm::delta: return InstanceKind::spq;
    default: return InstanceKind::tree;
  }
}

std::size_t instance_size(const Instance& instance) {
  return std::visit(
      [](const auto& x) -> std::size_t {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, PlainSpq>) {
          return x.tree.size();
        } else {
          return x.size();
        }
      },
      instance);
}

std::size_t algorithm_budget(Algorithm a, std::size_t n) {
  return a == Algorithm::brect ? brect_workspace_budget(n) : kConstantWorkspaceBudget;
}

std::size_t algorithm_record_words(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::subtree_sizes:
    case Algorithm::depths: return 10;
    case Algorithm::treemap: return 33;
    default: return 17;
  }
}

namespace {

template <typename T>
const T& as(Algorithm a, const Instance& instance) {
  if (const T* p = std::get_if<T>(&instance)) return *p;
  throw Error(Errc::key, std::string(to_string(a)) + " needs a " + std::string(to_string(required_kind(a))) +
                             " instance, got " + std::string(to_string(kind_of(instance))));
}

}  // namespace

AlgorithmOutput run_algorithm(Algorithm a, const Instance& instance, RuntimeConfig config, const Canvas& canvas,
                              TraceLog* trace) {
  config.workspace_words = algorithm_budget(a, instance_size(instance));
  config.record_words = algorithm_record_words(a);
  AlgorithmOutput out;
  switch (a) {
    case Algorithm::subtree_sizes: out.values = run_subtree_sizes(as<PlainTree>(a, instance), config, trace); break;
    case Algorithm::depths: out.values = run_node_depths(as<PlainTree>(a, instance), config, trace); break;
    case Algorithm::dominance:
      out.drawing = run_dominance(as<PlainDag>(a, instance), DominanceMode::basic, config, trace);
      break;
    case Algorithm::dominance_compressed:
      out.drawing = run_dominance(as<PlainDag>(a, instance), DominanceMode::compressed, config, trace);
      break;
    case Algorithm::treemap:
      out.drawing = run_treemap(as<PlainTree>(a, instance), canvas.width, canvas.height, config, trace);
      break;
    case Algorithm::brect: out.drawing = run_brect(as<PlainTree>(a, instance), config, trace); break;
    case Algorithm::delta: out.drawing = run_delta(as<PlainSpq>(a, instance), config, trace); break;
  }
  return out;
}

AlgorithmOutput reference_output(Algorithm a, const Instance& instance, const Canvas& canvas) {
  AlgorithmOutput out;
  switch (a) {
    case Algorithm::subtree_sizes: out.values = reference_subtree_sizes(as<PlainTree>(a, instance)); break;
    case Algorithm::depths: out.values = reference_depths(as<PlainTree>(a, instance)); break;
    case Algorithm::dominance:
      out.drawing = reference_dominance(as<PlainDag>(a, instance), DominanceMode::basic);
      break;
    case Algorithm::dominance_compressed:
      out.drawing = reference_dominance(as<PlainDag>(a, instance), DominanceMode::compressed);
      break;
    case Algorithm::treemap:
      out.drawing = reference_treemap(as<PlainTree>(a, instance), canvas.width, canvas.height);
      break;
    case Algorithm::brect: out.drawing = reference_brect(as<PlainTree>(a, instance)); break;
    case Algorithm::delta: out.drawing = reference_delta(as<PlainSpq>(a, instance)); break;
  }
  return out;
}

Report verify_output(Algorithm a, const Instance& instance, const AlgorithmOutput& out, const Canvas& canvas) {
  Report rep;
  const AlgorithmOutput ref = reference_output(a, instance, canvas);
  auto mismatch = [&](const std::vector<std::string>& names, std::size_t i, const std::string& got,
                      const std::string& want) {
    rep.violations.push_back(names[i] + ": got " + got + ", reference " + want);
  };
  if (ref.values) {
    if (!out.values || out.values->values.size() != ref.values->values.size()) {
      rep.violations.push_back("output has the wrong shape");
      return rep;
    }
    for (std::size_t i = 0; i < ref.values->values.size(); ++i) {
      if (out.values->values[i] != ref.values->values[i]) {
        mismatch(ref.values->names, i, std::to_string(out.values->values[i]),
                 std::to_string(ref.values->values[i]));
      }
    }
    return rep;
  }
  const Drawing& want = *ref.drawing;
  if (!out.drawing || out.drawing->points.size() != want.points.size() ||
      out.drawing->rects.size() != want.rects.size()) {
    rep.violations.push_back("output has the wrong shape");
    return rep;
  }
  const Drawing& got = *out.drawing;
  for (std::size_t i = 0; i < want.points.size(); ++i) {
    if (!(got.points[i] == want.points[i])) {
      mismatch(want.names, i, "(" + got.points[i].x.str() + ", " + got.points[i].y.str() + ")",
               "(" + want.points[i].x.str() + ", " + want.points[i].y.str() + ")");
    }
  }
  for (std::size_t i = 0; i < want.rects.size(); ++i) {
    if (!(got.rects[i] == want.rects[i])) mismatch(want.names, i, "a different rectangle", "another");
  }
  Report prop;
  switch (a) {
    case Algorithm::dominance:
    case Algorithm::dominance_compressed: prop = check_dominance_property(got, as<PlainDag>(a, instance)); break;
    case Algorithm::treemap: prop = check_treemap(got, as<PlainTree>(a, instance), canvas.width, canvas.height); break;
    case Algorithm::brect: prop = check_brect(got, as<PlainTree>(a, instance)); break;
    case Algorithm::delta: prop = check_delta(got, as<PlainSpq>(a, instance)); break;
    default: break;
  }
  rep.violations.insert(rep.violations.end(), prop.violations.begin(), prop.violations.end());
  return rep;
}

}  // namespace odraw
