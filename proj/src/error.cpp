#include "odraw/error.hpp"

namespace odraw {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::serialization: return "serialization";
    case Errc::authentication: return "authentication";
    case Errc::round_discipline: return "round-discipline";
    case Errc::capacity: return "capacity";
    case Errc::out_of_range: return "out-of-range";
    case Errc::key: return "key";
    case Errc::ambiguity: return "ambiguity";
    case Errc::not_a_tree: return "not-a-tree";
    case Errc::traversal: return "traversal";
    case Errc::malformed_tour: return "malformed-tour";
    case Errc::malformed_graph: return "malformed-graph";
    case Errc::spanning: return "spanning";
    case Errc::incomplete_drawing: return "incomplete-drawing";
    case Errc::malformed_spq: return "malformed-spq";
    case Errc::inconsistent_areas: return "inconsistent-areas";
    case Errc::degenerate_input: return "degenerate-input";
    case Errc::arity: return "arity";
    case Errc::invariant_violation: return "invariant-violation";
    case Errc::overflow: return "overflow";
    case Errc::parse: return "parse";
  }
  return "unknown";
}

}  // namespace odraw
