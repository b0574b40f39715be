#pragma once

#include "odraw/instance.hpp"

namespace fixtures {

inline odraw::PlainTree chain3() {
  return odraw::PlainTree::build({{"r", "", 0, {}}, {"c", "r", 1, {}}, {"g", "c", 1, {}}});
}

inline odraw::PlainTree cherry() {
  return odraw::PlainTree::build({{"r", "", 0, {}}, {"a", "r", 1, {}}, {"b", "r", 2, {}}});
}

inline odraw::PlainDag single_edge() { return odraw::PlainDag::build({{"s", "t", 1, 1}}); }

// a left of b at both s and t.
inline odraw::PlainDag diamond() {
  return odraw::PlainDag::build({{"s", "a", 1, 1}, {"s", "b", 2, 1}, {"a", "t", 1, 1}, {"b", "t", 1, 2}});
}

inline odraw::PlainSpq single_q() {
  return odraw::PlainSpq::build({{"q", odraw::SpqType::q, "", 0, "s", "t"}});
}

inline odraw::PlainSpq series2() {
  using odraw::SpqType;
  return odraw::PlainSpq::build({{"S", SpqType::s, "", 0, "", ""},
                                 {"q1", SpqType::q, "S", 1, "s", "m"},
                                 {"q2", SpqType::q, "S", 2, "m", "t"}});
}

inline odraw::PlainSpq parallel2() {
  using odraw::SpqType;
  return odraw::PlainSpq::build({{"P", SpqType::p, "", 0, "", ""},
                                 {"q1", SpqType::q, "P", 1, "s", "t"},
                                 {"q2", SpqType::q, "P", 2, "s", "t"}});
}

// P(S(s->m->t), Q(s->t)): transitive edge on the right.
inline odraw::PlainSpq path_with_shortcut() {
  using odraw::SpqType;
  return odraw::PlainSpq::build({{"P", SpqType::p, "", 0, "", ""},
                                 {"S", SpqType::s, "P", 1, "", ""},
                                 {"q1", SpqType::q, "S", 1, "s", "m"},
                                 {"q2", SpqType::q, "S", 2, "m", "t"},
                                 {"q3", SpqType::q, "P", 2, "s", "t"}});
}

}  // namespace fixtures
