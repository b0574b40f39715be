#include "odraw/svg.hpp"

#include <sstream>

namespace odraw {

namespace {

constexpr std::int64_t kScale = 40;
constexpr std::int64_t kMargin = 20;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string emit_svg(const Drawing& d, const EdgeList& edges) {
  std::ostringstream out;
  const bool empty = d.points.empty() && d.rects.empty();
  Rational minx = 0, miny = 0, maxx = 0, maxy = 0;
  bool first = true;
  auto extend = [&](const Rational& x, const Rational& y) {
    if (first) {
      minx = maxx = x;
      miny = maxy = y;
      first = false;
      return;
    }
    minx = min(minx, x);
    maxx = max(maxx, x);
    miny = min(miny, y);
    maxy = max(maxy, y);
  };
  for (const auto& p : d.points) extend(p.x, p.y);
  for (const auto& r : d.rects) {
    extend(r.px, r.py);
    extend(r.qx, r.qy);
  }
  auto sx = [&](const Rational& x) { return ((x - minx) * kScale + kMargin).decimal(); };
  auto sy = [&](const Rational& y) { return ((maxy - y) * kScale + kMargin).decimal(); };
  const Rational width = empty ? Rational(0) : (maxx - minx) * kScale + 2 * kMargin;
  const Rational height = empty ? Rational(0) : (maxy - miny) * kScale + 2 * kMargin;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width.decimal() << "\" height=\""
      << height.decimal() << "\" viewBox=\"0 0 " << width.decimal() << ' ' << height.decimal() << "\">\n";
  if (!d.rects.empty()) {
    out << "<g fill=\"none\" stroke=\"black\" font-size=\"10\">\n";
    for (std::size_t i = 0; i < d.rects.size(); ++i) {
      const Rect& r = d.rects[i];
      out << "<rect x=\"" << sx(r.px) << "\" y=\"" << sy(r.qy) << "\" width=\"" << ((r.qx - r.px) * kScale).decimal()
          << "\" height=\"" << ((r.qy - r.py) * kScale).decimal() << "\"><title>" << escape(d.names[i])
          << "</title></rect>\n";
    }
    out << "</g>\n";
  }
  if (!d.points.empty()) {
    out << "<g stroke=\"black\">\n";
    for (const auto& [u, v] : edges) {
      out << "<line x1=\"" << sx(d.points[u].x) << "\" y1=\"" << sy(d.points[u].y) << "\" x2=\"" << sx(d.points[v].x)
          << "\" y2=\"" << sy(d.points[v].y) << "\"/>\n";
    }
    out << "</g>\n<g font-size=\"10\">\n";
    for (std::size_t i = 0; i < d.points.size(); ++i) {
      out << "<circle cx=\"" << sx(d.points[i].x) << "\" cy=\"" << sy(d.points[i].y) << "\" r=\"4\"/>";
      out << "<text x=\"" << sx(d.points[i].x) << "\" y=\"" << sy(d.points[i].y) << "\" dx=\"6\" dy=\"-6\">"
          << escape(d.names[i]) << "</text>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

EdgeList drawing_edges(const Instance& instance) {
  EdgeList out;
  if (const auto* t = std::get_if<PlainTree>(&instance)) {
    for (std::size_t v = 0; v < t->size(); ++v) {
      if (t->parent[v] >= 0) out.emplace_back(t->parent[v], static_cast<NodeId>(v));
    }
    return out;
  }
  const PlainDag g = std::holds_alternative<PlainDag>(instance) ? std::get<PlainDag>(instance)
                                                                 : std::get<PlainSpq>(instance).graph();
  for (const auto& e : g.edges) out.emplace_back(e.from, e.to);
  return out;
}

}  // namespace odraw
