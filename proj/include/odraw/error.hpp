#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace odraw {

enum class Errc {
  serialization,
  authentication,
  round_discipline,
  capacity,
  out_of_range,
  key,
  ambiguity,
  not_a_tree,
  traversal,
  malformed_tour,
  malformed_graph,
  spanning,
  incomplete_drawing,
  malformed_spq,
  inconsistent_areas,
  degenerate_input,
  arity,
  invariant_violation,
  overflow,
  parse,
};

std::string_view to_string(Errc code) noexcept;

// Every module reports failures through this one exception type; callers
// dispatch on code() (the CLI maps codes to exit statuses).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace odraw
