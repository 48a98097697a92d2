#include "tropenum/lattice_geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "tropenum/errors.hpp"

namespace tropenum {

TropicalDegree::TropicalDegree(std::vector<LatticeVector> entries) : entries_(std::move(entries)) {
  for (const auto& v : entries_) {
    if (v.is_zero()) throw InvalidArgument("degree entries must be nonzero");
  }
  std::sort(entries_.begin(), entries_.end());
}

bool TropicalDegree::is_reduced() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& v) { return is_primitive(v); });
}

LatticeVector TropicalDegree::sum() const {
  LatticeVector s;
  for (const auto& v : entries_) s += v;
  return s;
}

std::vector<std::pair<LatticeVector, int>> TropicalDegree::grouped() const {
  std::vector<std::pair<LatticeVector, int>> out;
  for (const auto& v : entries_) {
    if (!out.empty() && out.back().first == v) {
      ++out.back().second;
    } else {
      out.emplace_back(v, 1);
    }
  }
  return out;
}

namespace {

std::int64_t orient(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
  return cross(a - o, b - o);
}

// Half-plane angle order for direction vectors starting at the positive x-axis.
bool angle_less(const LatticeVector& a, const LatticeVector& b) {
  auto half = [](const LatticeVector& v) { return (v.y < 0 || (v.y == 0 && v.x < 0)) ? 1 : 0; };
  const int ha = half(a);
  const int hb = half(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

}  // namespace

LatticePolygon::LatticePolygon(std::vector<LatticePoint> points) {
  std::vector<LatticePoint> pts = points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) throw InvalidPolygon("polygon needs at least three distinct vertices");
  // Andrew's monotone chain, dropping collinear points.
  std::vector<LatticePoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && orient(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) throw InvalidPolygon("polygon has zero area");
  std::int64_t twice = 0;
  for (std::size_t i = 0; i < hull.size(); ++i) twice += cross(hull[i], hull[(i + 1) % hull.size()]);
  if (twice <= 0) throw InvalidPolygon("polygon has zero area");
  // Start from the bottom-most, then left-most vertex.
  auto start = std::min_element(hull.begin(), hull.end(), [](const auto& a, const auto& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  });
  std::rotate(hull.begin(), start, hull.end());
  vertices_ = std::move(hull);
  twice_area_ = twice;
  for (const auto& p : points) {
    if (!contains(p)) throw InvalidPolygon("point outside hull");
    if (contains_strictly(p)) throw InvalidPolygon("input is not convex: " + to_string(p) + " is interior");
  }
}

LatticePolygon LatticePolygon::triangle(std::int64_t d) {
  if (d < 1) throw InvalidPolygon("degree must be positive");
  return LatticePolygon({{0, 0}, {d, 0}, {0, d}});
}

LatticePolygon LatticePolygon::kite(std::int64_t k, std::int64_t k_prime) {
  return LatticePolygon({{0, 0}, {1, k}, {0, k + k_prime}, {-1, k}});
}

LatticePolygon LatticePolygon::from_degree(const TropicalDegree& degree) {
  if (!degree.sum().is_zero()) throw InvalidArgument("degree is not balanced");
  std::vector<LatticeVector> steps;
  for (const auto& n : degree.entries()) steps.push_back(rotate_ccw(n));
  std::stable_sort(steps.begin(), steps.end(), angle_less);
  std::vector<LatticePoint> pts;
  LatticePoint cur;
  for (const auto& s : steps) {
    pts.push_back(cur);
    cur += s;
  }
  LatticePolygon raw(pts);
  const LatticePoint origin = raw.vertices().front();
  for (auto& p : pts) p -= origin;
  return LatticePolygon(pts);
}

std::vector<PolygonSide> LatticePolygon::sides() const {
  std::vector<PolygonSide> out;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const auto& a = vertices_[i];
    const auto& b = vertices_[(i + 1) % vertices_.size()];
    const LatticeVector e = b - a;
    PolygonSide s;
    s.index = i;
    s.integral_length = lattice_length(e);
    s.inner_normal = rotate_ccw(primitive(e));
    s.start = a;
    s.end = b;
    out.push_back(s);
  }
  return out;
}

bool LatticePolygon::contains_strictly(const LatticePoint& p) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (orient(vertices_[i], vertices_[(i + 1) % vertices_.size()], p) <= 0) return false;
  }
  return true;
}

bool LatticePolygon::contains(const LatticePoint& p) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (orient(vertices_[i], vertices_[(i + 1) % vertices_.size()], p) < 0) return false;
  }
  return true;
}

PointCount boundary_points(const LatticePolygon& polygon) {
  PointCount out;
  for (const auto& s : polygon.sides()) {
    const LatticeVector step = primitive(s.end - s.start);
    for (std::int64_t j = 0; j < s.integral_length; ++j) out.points.push_back(s.start + j * step);
    out.count += s.integral_length;
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

PointCount interior_points(const LatticePolygon& polygon) {
  std::int64_t x0 = polygon.vertices()[0].x, x1 = x0, y0 = polygon.vertices()[0].y, y1 = y0;
  for (const auto& v : polygon.vertices()) {
    x0 = std::min(x0, v.x);
    x1 = std::max(x1, v.x);
    y0 = std::min(y0, v.y);
    y1 = std::max(y1, v.y);
  }
  PointCount out;
  for (std::int64_t x = x0; x <= x1; ++x) {
    for (std::int64_t y = y0; y <= y1; ++y) {
      if (polygon.contains_strictly({x, y})) out.points.push_back({x, y});
    }
  }
  out.count = static_cast<std::int64_t>(out.points.size());
  return out;
}

TropicalDegree dual_degree(const LatticePolygon& polygon) {
  std::vector<LatticeVector> entries;
  for (const auto& s : polygon.sides()) {
    for (std::int64_t j = 0; j < s.integral_length; ++j) entries.push_back(-s.inner_normal);
  }
  return TropicalDegree(std::move(entries));
}

std::int64_t severi_dimension(const LatticePolygon& polygon, std::int64_t genus) {
  return boundary_points(polygon).count + genus - 1;
}

std::int64_t delta_invariant(const LatticePolygon& polygon, std::int64_t genus) {
  return interior_points(polygon).count - genus;
}

std::vector<LatticeVector> admissible_slopes(const LatticePolygon& polygon) {
  std::vector<LatticePoint> pts = boundary_points(polygon).points;
  const auto inner = interior_points(polygon).points;
  pts.insert(pts.end(), inner.begin(), inner.end());
  std::set<LatticeVector> out;
  for (const auto& a : pts) {
    for (const auto& b : pts) {
      if (a != b) out.insert(rotate_ccw(a - b));
    }
  }
  return {out.begin(), out.end()};
}

bool Sublattice::contains(const LatticeVector& v) const {
  // first = (a, 0), second = (b, c)
  const std::int64_t a = first.x, b = second.x, c = second.y;
  if (v.y % c != 0) return false;
  const std::int64_t rest = v.x - b * (v.y / c);
  return rest % a == 0;
}

std::vector<Sublattice> sublattices_of_index(std::int64_t n) {
  std::vector<Sublattice> out;
  for (std::int64_t a = 1; a <= n; ++a) {
    if (n % a != 0) continue;
    const std::int64_t c = n / a;
    for (std::int64_t b = 0; b < a; ++b) out.push_back({{a, 0}, {b, c}, n});
  }
  return out;
}

ComponentBound component_lower_bound(const LatticePolygon& polygon, std::int64_t genus) {
  if (genus < 1) throw InvalidArgument("component_lower_bound requires g >= 1");
  const auto boundary = boundary_points(polygon).points;
  const auto interior = interior_points(polygon).points;
  const LatticePoint origin = boundary.front();
  ComponentBound out;
  for (std::int64_t n = 1; n <= polygon.twice_area(); ++n) {
    for (const auto& m : sublattices_of_index(n)) {
      const bool keeps_boundary = std::all_of(boundary.begin(), boundary.end(),
                                              [&](const auto& p) { return m.contains(p - origin); });
      if (!keeps_boundary) continue;
      const auto inside = std::count_if(interior.begin(), interior.end(),
                                        [&](const auto& p) { return m.contains(p - origin); });
      if (inside < genus) continue;
      out.sublattices.push_back(m);
      out.interior_counts.push_back(inside);
      ++out.count;
    }
  }
  return out;
}

std::int64_t kite_lower_bound(std::int64_t k, std::int64_t k_prime, std::int64_t genus) {
  if (k < 0 || k_prime < k || k_prime <= 0) throw InvalidArgument("kite requires 0 <= k <= k' and k' > 0");
  if (genus < 1) throw InvalidArgument("kite bound requires g >= 1");
  const auto bound = component_lower_bound(LatticePolygon::kite(k, k_prime), genus);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < bound.sublattices.size(); ++i) {
    if (bound.sublattices[i].index % 2 == 0) {
      total += 1;
      continue;
    }
    const std::int64_t excess = bound.interior_counts[i] - genus;
    const std::int64_t top = std::min(excess, genus);
    for (std::int64_t kappa = 0; kappa <= top; ++kappa) {
      if ((kappa - excess) % 2 == 0) ++total;
    }
  }
  return total;
}

namespace {

std::int64_t parse_int(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::vector<LatticePoint> parse_vertex_list(std::string_view text) {
  std::vector<LatticePoint> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto next = text.find(';', pos);
    const std::string_view item = text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    const auto comma = item.find(',');
    if (comma == std::string_view::npos) throw ParseError("expected x,y in '" + std::string(item) + "'");
    out.push_back({parse_int(item.substr(0, comma)), parse_int(item.substr(comma + 1))});
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

std::vector<LatticePoint> parse_polygon_file(std::string_view contents) {
  std::vector<LatticePoint> out;
  std::istringstream in{std::string(contents)};
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a)) continue;
    if (!(fields >> b) || (fields >> extra)) throw ParseError("expected two integers per line: '" + line + "'");
    out.push_back({parse_int(a), parse_int(b)});
  }
  return out;
}

}  // namespace tropenum
