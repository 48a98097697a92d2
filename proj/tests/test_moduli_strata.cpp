#include <doctest.h>

#include <random>
#include <vector>

#include "tropenum/enumeration.hpp"
#include "tropenum/errors.hpp"
#include "tropenum/moduli_strata.hpp"

using namespace tropenum;

namespace {

PointConfiguration points(std::vector<std::pair<long, long>> xy) {
  PointConfiguration q;
  for (auto [x, y] : xy) q.points.push_back({Rational(x), Rational(y)});
  return q;
}

}  // namespace

TEST_CASE("trivalent trees have strata of expected dimension") {
  for (std::int64_t d = 1; d <= 3; ++d) {
    std::size_t seen = 0;
    generate_types(dual_degree(LatticePolygon::triangle(d)), 0, 0, true, [&](const CombinatorialType& t) {
      ++seen;
      CHECK(stratum_dimension(t) == expected_dimension(t, 0));
      CHECK(stratum_dimension(t) == 3 * d - 1);
      CHECK(stratum_nonempty(t));
      CHECK(is_regular(t));
    });
    CHECK(seen > 0);
  }
}

TEST_CASE("nonemptiness agrees with the exact LP on random graphs") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> coord(-2, 2);
  int empty = 0, nonempty = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    const std::size_t m = rng() % 7;
    std::vector<GraphEdge> edges;
    std::vector<LatticeVector> slopes;
    for (std::size_t e = 0; e < m; ++e) {
      edges.push_back({rng() % n, rng() % n});
      slopes.push_back({coord(rng), coord(rng)});
    }
    const CombinatorialType t(Graph(n, edges, {}), std::vector<int>(n, 0), slopes, {});
    const StratumSystem sys = build_stratum_system(t);
    const auto lengths = sys.length_unknowns();
    const bool lp = strictly_feasible(sys.equalities, sys.rhs, lengths);
    CHECK(stratum_nonempty(t) == lp);
    (lp ? nonempty : empty) += 1;
  }
  CHECK(empty > 50);
  CHECK(nonempty > 50);
}

TEST_CASE("stratum system shape") {
  generate_types(dual_degree(LatticePolygon::triangle(1)), 0, 2, true, [&](const CombinatorialType& t) {
    const PointConfiguration q = points({{0, 0}, {5, 3}});
    const StratumSystem free = build_stratum_system(t);
    const StratumSystem pinned = build_stratum_system(t, &q);
    CHECK(free.unknowns() == 2 * t.graph().vertex_count() + t.graph().edges().size());
    CHECK(free.equalities.rows() == 2 * t.graph().edges().size());
    CHECK(pinned.equalities.rows() == free.equalities.rows() + 4);
    CHECK(free.length_unknowns().size() == t.graph().edges().size());
  });
}

TEST_CASE("one line through two general points") {
  std::size_t types = 0, solutions = 0;
  const PointConfiguration q = points({{-3, 1}, {4, 7}});
  generate_types(dual_degree(LatticePolygon::triangle(1)), 0, 2, true, [&](const CombinatorialType& t) {
    ++types;
    for (const auto& c : solve_through_points(t, q)) {
      c.validate();
      CHECK(c.positions[t.graph().legs()[t.contracted_legs()[0]]] == q.points[0]);
      ++solutions;
    }
  });
  CHECK(types == 12);
  CHECK(solutions == 1);
}

TEST_CASE("points on a common horizontal line are degenerate for some type") {
  const PointConfiguration q = points({{0, 0}, {5, 0}});
  bool degenerate = false;
  generate_types(dual_degree(LatticePolygon::triangle(1)), 0, 2, true, [&](const CombinatorialType& t) {
    try {
      solve_through_points(t, q);
    } catch (const DegenerateConfiguration&) {
      degenerate = true;
    }
  });
  CHECK(degenerate);
}

TEST_CASE("configurations are reproducible and bounded") {
  const auto a = sample_configuration(9, 42, 0);
  const auto b = sample_configuration(9, 42, 0);
  CHECK(a.points == b.points);
  CHECK(sample_configuration(9, 43, 0).points != a.points);
  for (const auto& p : sample_configuration(50, 1, 2).points) {
    CHECK(abs(p.x) <= 4096);
    CHECK(abs(p.y) <= 4096);
  }
  CHECK_THROWS_AS(sample_configuration(3, 0, -1), InvalidArgument);
}
