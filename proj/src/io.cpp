#include "odraw/io.hpp"

#include <charconv>
#include <sstream>

#include "odraw/error.hpp"

namespace odraw {

namespace {

struct Token {
  std::string text;
  std::size_t column = 0;  // 1-based
};

struct Line {
  std::size_t number = 0;
  std::vector<Token> tokens;
};

std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      const std::size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i > start) line.tokens.push_back({raw.substr(start, i - start), start + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void fail(std::size_t line, std::size_t column, const std::string& what) {
  throw Error(Errc::parse, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

std::int64_t integer(const Line& line, const Token& t, const char* what) {
  std::int64_t v = 0;
  const char* end = t.text.data() + t.text.size();
  const auto [ptr, ec] = std::from_chars(t.text.data(), end, v);
  if (ec != std::errc{} || ptr != end) fail(line.number, t.column, std::string("expected an integer ") + what);
  return v;
}

void arity(const Line& line, std::size_t lo, std::size_t hi, const char* shape) {
  const std::size_t n = line.tokens.size();
  if (n >= lo && n <= hi) return;
  const std::size_t col = n > hi ? line.tokens[hi].column : line.tokens.back().column + line.tokens.back().text.size();
  fail(line.number, col, std::string("expected \"") + shape + "\"");
}

std::string parent_name(const Token& t) { return t.text == "-" ? std::string() : t.text; }

}  // namespace

Instance parse_instance(std::istream& in) {
  const auto lines = tokenize(in);
  if (lines.empty()) fail(1, 1, "missing kind header (tree, dag or spq)");
  const Line& head = lines.front();
  const std::string& kind = head.tokens.front().text;
  if (head.tokens.size() != 1) fail(head.number, head.tokens[1].column, "unexpected text after the kind header");
  if (kind != "tree" && kind != "dag" && kind != "spq") {
    fail(head.number, head.tokens.front().column, "unknown kind \"" + kind + "\" (expected tree, dag or spq)");
  }
  if (lines.size() == 1) fail(head.number + 1, 1, "no records after the header");
  const auto body = std::span(lines).subspan(1);

  if (kind == "tree") {
    std::vector<TreeNodeSpec> nodes;
    for (const Line& l : body) {
      arity(l, 3, 4, "node parent child_index [area]");
      TreeNodeSpec s{l.tokens[0].text, parent_name(l.tokens[1]), integer(l, l.tokens[2], "child index"), {}};
      if (l.tokens.size() == 4) s.area = integer(l, l.tokens[3], "area");
      nodes.push_back(std::move(s));
    }
    return PlainTree::build(nodes);
  }
  if (kind == "dag") {
    std::vector<DagEdgeSpec> edges;
    for (const Line& l : body) {
      arity(l, 4, 4, "from to out_rank in_rank");
      edges.push_back({l.tokens[0].text, l.tokens[1].text, integer(l, l.tokens[2], "out rank"),
                       integer(l, l.tokens[3], "in rank")});
    }
    return PlainDag::build(edges);
  }
  std::vector<SpqNodeSpec> nodes;
  for (const Line& l : body) {
    arity(l, 4, 6, "id type parent child_index [from to]");
    const Token& ty = l.tokens[1];
    SpqNodeSpec s;
    s.id = l.tokens[0].text;
    if (ty.text == "S" || ty.text == "s") {
      s.type = SpqType::s;
    } else if (ty.text == "P" || ty.text == "p") {
      s.type = SpqType::p;
    } else if (ty.text == "Q" || ty.text == "q") {
      s.type = SpqType::q;
    } else {
      fail(l.number, ty.column, "node type must be S, P or Q");
    }
    s.parent = parent_name(l.tokens[2]);
    s.child_index = integer(l, l.tokens[3], "child index");
    if (s.type == SpqType::q) {
      arity(l, 6, 6, "id Q parent child_index from to");
      s.from = l.tokens[4].text;
      s.to = l.tokens[5].text;
    } else if (l.tokens.size() != 4) {
      fail(l.number, l.tokens[4].column, "only Q nodes carry endpoints");
    }
    nodes.push_back(std::move(s));
  }
  return PlainSpq::build(nodes);
}

Instance parse_instance_text(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

namespace {

void write_tree_lines(std::ostream& out, const PlainTree& t, bool areas) {
  for (NodeId v : preorder(t)) {
    out << t.names[v] << ' ';
    if (t.parent[v] < 0) {
      out << "- 0";
    } else {
      const auto& sib = t.children[t.parent[v]];
      out << t.names[t.parent[v]] << ' ' << (std::find(sib.begin(), sib.end(), v) - sib.begin() + 1);
    }
    if (areas) out << ' ' << t.area[v];
    out << '\n';
  }
}

}  // namespace

void write_instance(std::ostream& out, const Instance& instance) {
  if (const auto* t = std::get_if<PlainTree>(&instance)) {
    out << "tree\n";
    write_tree_lines(out, *t, t->has_areas());
  } else if (const auto* g = std::get_if<PlainDag>(&instance)) {
    out << "dag\n";
    for (const auto& e : g->edges) {
      out << g->names[e.from] << ' ' << g->names[e.to] << ' ' << e.out_rank << ' ' << e.in_rank << '\n';
    }
  } else {
    const auto& s = std::get<PlainSpq>(instance);
    const PlainTree& t = s.tree;
    out << "spq\n";
    for (NodeId v : preorder(t)) {
      static constexpr char kType[] = {'S', 'P', 'Q'};
      out << t.names[v] << ' ' << kType[static_cast<int>(s.type[v])] << ' ';
      if (t.parent[v] < 0) {
        out << "- 0";
      } else {
        const auto& sib = t.children[t.parent[v]];
        out << t.names[t.parent[v]] << ' ' << (std::find(sib.begin(), sib.end(), v) - sib.begin() + 1);
      }
      if (s.type[v] == SpqType::q) out << ' ' << s.vertices[s.src[v]] << ' ' << s.vertices[s.snk[v]];
      out << '\n';
    }
  }
}

void write_values(std::ostream& out, const NodeValues& values) {
  for (std::size_t i = 0; i < values.names.size(); ++i) out << values.names[i] << ' ' << values.values[i] << '\n';
}

namespace {

std::string number(const Rational& r, bool rational) {
  if (rational || !r.is_integer()) return r.str();
  return r.num().str();
}

}  // namespace

void write_drawing(std::ostream& out, const Drawing& d, bool rational) {
  for (std::size_t i = 0; i < d.points.size(); ++i) {
    out << d.names[i] << ' ' << number(d.points[i].x, rational) << ' ' << number(d.points[i].y, rational) << '\n';
  }
  for (std::size_t i = 0; i < d.rects.size(); ++i) {
    const Rect& r = d.rects[i];
    out << d.names[i] << ' ' << number(r.px, rational) << ' ' << number(r.py, rational) << ' '
        << number(r.qx, rational) << ' ' << number(r.qy, rational) << '\n';
  }
}

bool rational_output(Algorithm a) noexcept { return a == Algorithm::treemap || a == Algorithm::brect; }

void write_output(std::ostream& out, Algorithm a, const AlgorithmOutput& output) {
  if (output.values) write_values(out, *output.values);
  if (output.drawing) write_drawing(out, *output.drawing, rational_output(a));
}

Drawing parse_drawing(std::istream& in) {
  Drawing d;
  auto rational = [](const Line& l, const Token& t) {
    try {
      return Rational::parse(t.text);
    } catch (const Error& e) {
      fail(l.number, t.column, e.what());
    }
  };
  for (const Line& l : tokenize(in)) {
    if (l.tokens.size() == 3 && d.rects.empty()) {
      d.names.push_back(l.tokens[0].text);
      d.points.push_back({rational(l, l.tokens[1]), rational(l, l.tokens[2])});
    } else if (l.tokens.size() == 5 && d.points.empty()) {
      d.names.push_back(l.tokens[0].text);
      d.rects.push_back({rational(l, l.tokens[1]), rational(l, l.tokens[2]), rational(l, l.tokens[3]),
                         rational(l, l.tokens[4])});
    } else {
      fail(l.number, l.tokens.front().column, "expected \"node x y\" or \"node px py qx qy\" consistently");
    }
  }
  return d;
}

}  // namespace odraw
