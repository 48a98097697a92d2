#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "tropenum/rational.hpp"

namespace tropenum {

struct PolygonSide {
  std::size_t index = 0;
  LatticeVector inner_normal;  // primitive, points into the polygon
  std::int64_t integral_length = 0;
  LatticePoint start;
  LatticePoint end;
};

// Multiset of nonzero vectors of N, kept sorted.
class TropicalDegree {
 public:
  TropicalDegree() = default;
  explicit TropicalDegree(std::vector<LatticeVector> entries);

  const std::vector<LatticeVector>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool is_reduced() const;
  LatticeVector sum() const;
  // Distinct directions with their multiplicities, in sorted order.
  std::vector<std::pair<LatticeVector, int>> grouped() const;

  friend bool operator==(const TropicalDegree&, const TropicalDegree&) = default;

 private:
  std::vector<LatticeVector> entries_;
};

// Strictly convex lattice polygon with counterclockwise vertices.
class LatticePolygon {
 public:
  // Accepts any vertex order; canonicalizes to CCW, starting from the lowest-leftmost
  // vertex, and strips collinear points. Throws InvalidPolygon on zero area or on a
  // point strictly inside the hull (non-convex input).
  explicit LatticePolygon(std::vector<LatticePoint> points);

  static LatticePolygon triangle(std::int64_t d);  // (0,0),(d,0),(0,d)
  static LatticePolygon kite(std::int64_t k, std::int64_t k_prime);
  // Polygon dual to a balanced degree, normalized so its lowest-leftmost vertex is the origin.
  static LatticePolygon from_degree(const TropicalDegree& degree);

  const std::vector<LatticePoint>& vertices() const { return vertices_; }
  std::int64_t twice_area() const { return twice_area_; }
  Rational area() const { return Rational(static_cast<long>(twice_area_), 2); }
  std::vector<PolygonSide> sides() const;
  // Point inside (boundary excluded).
  bool contains_strictly(const LatticePoint& p) const;
  bool contains(const LatticePoint& p) const;

  friend bool operator==(const LatticePolygon&, const LatticePolygon&) = default;

 private:
  std::vector<LatticePoint> vertices_;
  std::int64_t twice_area_ = 0;
};

struct PointCount {
  std::int64_t count = 0;
  std::vector<LatticePoint> points;  // sorted
};

PointCount boundary_points(const LatticePolygon& polygon);
PointCount interior_points(const LatticePolygon& polygon);
TropicalDegree dual_degree(const LatticePolygon& polygon);
std::int64_t severi_dimension(const LatticePolygon& polygon, std::int64_t genus);
std::int64_t delta_invariant(const LatticePolygon& polygon, std::int64_t genus);

// 90-degree rotations of differences of lattice points of the polygon, without zero.
std::vector<LatticeVector> admissible_slopes(const LatticePolygon& polygon);

// Lattice spanned by (a, 0) and (b, c) with a, c > 0 and 0 <= b < a.
struct Sublattice {
  LatticeVector first;
  LatticeVector second;
  std::int64_t index = 0;
  bool contains(const LatticeVector& v) const;
  friend bool operator==(const Sublattice&, const Sublattice&) = default;
};

std::vector<Sublattice> sublattices_of_index(std::int64_t n);

struct ComponentBound {
  std::int64_t count = 0;
  std::vector<Sublattice> sublattices;
  std::vector<std::int64_t> interior_counts;  // |interior ∩ (p0 + M)| per sublattice
};

ComponentBound component_lower_bound(const LatticePolygon& polygon, std::int64_t genus);
std::int64_t kite_lower_bound(std::int64_t k, std::int64_t k_prime, std::int64_t genus);

// "x1,y1;x2,y2;..." or whitespace-separated pairs, one per line.
std::vector<LatticePoint> parse_vertex_list(std::string_view text);
std::vector<LatticePoint> parse_polygon_file(std::string_view contents);

}  // namespace tropenum
