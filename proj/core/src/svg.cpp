#include "tropenum/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace tropenum {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const ParamTropicalCurve& curve, const SvgOptions& options) {
  const auto& g = curve.type.graph();
  double x0 = std::numeric_limits<double>::max(), y0 = x0, x1 = -x0, y1 = -x0;
  std::vector<std::pair<double, double>> pos;
  for (const auto& p : curve.positions) {
    const double x = p.x.get_d(), y = p.y.get_d();
    pos.emplace_back(x, y);
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  if (pos.empty()) x0 = y0 = x1 = y1 = 0;
  double w = x1 - x0, h = y1 - y0;
  const double span = std::max({w, h, 1.0});
  if (w < 1e-9) w = span;
  if (h < 1e-9) h = span;
  const double cx = (x0 + x1) / 2, cy = (y0 + y1) / 2;
  w *= 1.2;
  h *= 1.2;
  const double vx0 = cx - w / 2, vy0 = cy - h / 2;
  const double px = options.width, py = options.width * h / w;
  auto sx = [&](double x) { return (x - vx0) / w * px; };
  auto sy = [&](double y) { return py - (y - vy0) / h * py; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(px) << "\" height=\"" << num(py + 20)
      << "\" viewBox=\"0 0 " << num(px) << ' ' << num(py + 20) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& e : g.edges()) {
    out << "<line x1=\"" << num(sx(pos[e.tail].first)) << "\" y1=\"" << num(sy(pos[e.tail].second)) << "\" x2=\""
        << num(sx(pos[e.head].first)) << "\" y2=\"" << num(sy(pos[e.head].second))
        << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  }
  for (std::size_t l = 0; l < g.legs().size(); ++l) {
    const auto [ax, ay] = pos[g.legs()[l]];
    const auto& s = curve.type.leg_slopes()[l];
    if (s.is_zero()) {
      out << "<circle cx=\"" << num(sx(ax)) << "\" cy=\"" << num(sy(ay))
          << "\" r=\"5\" fill=\"none\" stroke=\"red\" stroke-width=\"1.5\"/>\n";
      continue;
    }
    // Walk along the ray to the viewport boundary.
    double t = std::numeric_limits<double>::max();
    const double dx = static_cast<double>(s.x), dy = static_cast<double>(s.y);
    if (dx > 0) t = std::min(t, (vx0 + w - ax) / dx);
    if (dx < 0) t = std::min(t, (vx0 - ax) / dx);
    if (dy > 0) t = std::min(t, (vy0 + h - ay) / dy);
    if (dy < 0) t = std::min(t, (vy0 - ay) / dy);
    out << "<line x1=\"" << num(sx(ax)) << "\" y1=\"" << num(sy(ay)) << "\" x2=\"" << num(sx(ax + t * dx))
        << "\" y2=\"" << num(sy(ay + t * dy)) << "\" stroke=\"steelblue\" stroke-width=\"1.5\"/>\n";
  }
  for (const auto& [x, y] : pos) {
    out << "<circle cx=\"" << num(sx(x)) << "\" cy=\"" << num(sy(y)) << "\" r=\"2.5\" fill=\"black\"/>\n";
  }
  if (!options.caption.empty()) {
    out << "<text x=\"4\" y=\"" << num(py + 15) << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << escape(options.caption) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace tropenum
