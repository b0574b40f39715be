#pragma once

#include <istream>
#include <ostream>
#include <string>

#include "odraw/algorithms.hpp"

namespace odraw {

// Line-based instance text. Blank lines and '#' comments are ignored; the
// first remaining line is the kind header. Syntax errors raise Error(parse)
// with "line L, column C: ..."; structural problems raise the builder's error.
//   tree: node parent child_index [area]     (root parent "-")
//   dag:  from to out_rank in_rank
//   spq:  id type parent child_index [from to]  (type S, P or Q; Q has endpoints)
Instance parse_instance(std::istream& in);
Instance parse_instance_text(const std::string& text);
void write_instance(std::ostream& out, const Instance& instance);

// "node value", "node x y" or "node px py qx qy", one line per node in name
// order. Rationals print as p/q when `rational` is set, else integers must be
// whole and print plainly.
void write_values(std::ostream& out, const NodeValues& values);
void write_drawing(std::ostream& out, const Drawing& drawing, bool rational);
void write_output(std::ostream& out, Algorithm a, const AlgorithmOutput& output);
bool rational_output(Algorithm a) noexcept;

// Inverse of write_drawing; accepts either number style.
Drawing parse_drawing(std::istream& in);

}  // namespace odraw
