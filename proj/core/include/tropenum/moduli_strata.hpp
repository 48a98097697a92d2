#pragma once

#include <cstdint>
#include <vector>

#include "tropenum/linear_algebra.hpp"
#include "tropenum/tropical_graphs.hpp"

namespace tropenum {

// One point per contracted leg, matched in leg order.
struct PointConfiguration {
  std::vector<RationalPoint> points;
  std::uint64_t seed = 0;
  int attempt = 0;
};

// Integer points uniform in [-B, B], B = 2^(10 + attempt).
PointConfiguration sample_configuration(std::size_t count, std::uint64_t seed, int attempt);

// Unknowns: (x_v, y_v) for every vertex, then one length per edge.
struct StratumSystem {
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  RationalMatrix equalities;
  std::vector<Rational> rhs;

  std::size_t unknowns() const { return 2 * vertex_count + edge_count; }
  static std::size_t position_unknown(std::size_t v, int coordinate) { return 2 * v + static_cast<std::size_t>(coordinate); }
  std::size_t length_unknown(std::size_t e) const { return 2 * vertex_count + e; }
  std::vector<std::size_t> length_unknowns() const;
};

// Edge relations position(head) - position(tail) - length * slope = 0, and, when points
// are given, position(anchor of i-th contracted leg) = q_i.
StratumSystem build_stratum_system(const CombinatorialType& type, const PointConfiguration* points = nullptr);

// Dimension of the solution space of the edge relations.
std::int64_t stratum_dimension(const CombinatorialType& type);
// Whether some realization has every edge length strictly positive.
bool stratum_nonempty(const CombinatorialType& type);

// Realizations with all lengths positive through the points. Throws DegenerateConfiguration
// for a positive-dimensional solution set meeting lengths >= 0, or a unique solution with
// a zero length.
std::vector<ParamTropicalCurve> solve_through_points(const CombinatorialType& type, const PointConfiguration& points);

// Nonempty and of expected dimension.
bool is_regular(const CombinatorialType& type);

}  // namespace tropenum
