#include <doctest.h>

#include <set>
#include <string>

#include "tropenum/enumeration.hpp"
#include "tropenum/errors.hpp"

using namespace tropenum;

namespace {

// Every type with r marks, solved one by one through the same points.
Rational brute_force(const LatticePolygon& polygon, std::int64_t genus, bool connected, const PointConfiguration& q) {
  Rational total = 0;
  generate_types(dual_degree(polygon), genus, q.points.size(), connected, [&](const CombinatorialType& t) {
    for (const auto& c : solve_through_points(t, q)) {
      total += Rational(mikhalkin_multiplicity(c.type)) / Rational(automorphism_count(c.type));
    }
  });
  return total;
}

CountReport count(const LatticePolygon& p, std::int64_t g, bool irreducible, std::uint64_t seed = 0) {
  CountRequest req{p};
  req.genus = g;
  req.irreducible_only = irreducible;
  req.seed = seed;
  return count_curves(req);
}

}  // namespace

TEST_CASE("type generation sizes") {
  const TropicalDegree line = dual_degree(LatticePolygon::triangle(1));
  // Tree with one vertex and three ends, two marks placed on ends or on each other's segment.
  CHECK(generate_types(line, 0, 2, true, [](const CombinatorialType&) {}) == 12);
  CHECK(generate_types(line, 0, 0, true, [](const CombinatorialType&) {}) == 1);
  CHECK(generate_types(line, 1, 3, true, [](const CombinatorialType&) {}) == 0);
  std::size_t conics = generate_types(dual_degree(LatticePolygon::triangle(2)), 0, 0, true, [](const auto& t) {
    CHECK(genus(t) == 0);
    CHECK(check_balancing(t));
  });
  CHECK(conics > 0);
}

TEST_CASE("search agrees with solving every type") {
  struct Case {
    LatticePolygon polygon;
    std::int64_t genus;
    bool irreducible;
  };
  // Irreducible conics are left out: 1.6M marked types at r = 5.
  const Case cases[] = {
      {LatticePolygon::triangle(1), 0, true},
      {LatticePolygon({{0, 0}, {1, 0}, {0, 2}}), 0, true},
      {LatticePolygon::triangle(2), -1, false},
      {LatticePolygon({{0, 0}, {2, 1}, {1, 2}}), 0, true},
      {LatticePolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), 0, true},
      {LatticePolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), -1, false},
  };
  for (const auto& c : cases) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const CountReport r = count(c.polygon, c.genus, c.irreducible, seed);
      const Rational brute = brute_force(c.polygon, c.genus, c.irreducible, r.configuration);
      CHECK(Rational(r.total) == brute);
    }
  }
}

TEST_CASE("two lines through four points pair them up") {
  const CountReport r = count(LatticePolygon::triangle(2), -1, false);
  // Split 4 labelled points into two unordered pairs.
  int pairings = 0;
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        for (int d = c + 1; d < 4; ++d) {
          const bool disjoint = c != a && c != b && d != a && d != b;
          if (disjoint && a < c) ++pairings;
        }
      }
    }
  }
  CHECK(r.total == pairings);
  for (const auto& t : r.per_type) CHECK(t.components == 2);
}

TEST_CASE("small plane curve counts") {
  CHECK(count(LatticePolygon::triangle(1), 0, true).total == 1);
  CHECK(count(LatticePolygon::triangle(2), 0, true).total == 1);
  CHECK(count(LatticePolygon::triangle(3), 0, true).total == 12);
  CHECK(count(LatticePolygon::triangle(3), 0, false).total == 12);
}

TEST_CASE("ordered ends multiply by prod k_i!") {
  CountRequest req{LatticePolygon::triangle(2)};
  req.divide_unordered_legs = false;
  CHECK(count_curves(req).total == 8);
}

TEST_CASE("cubic through nine points: its type is a generated genus-one type") {
  const CountReport r = count(LatticePolygon::triangle(3), 1, true);
  REQUIRE(r.total == 1);
  REQUIRE(r.per_type.size() == 1);
  const CombinatorialType& found = r.per_type[0].curve.type;
  CHECK(genus(found) == 1);
  CHECK(r.per_type[0].multiplicity == 1);
  const std::string target = canonical_form(forget_marks(found), LegLabeling::UnorderedEnds);
  bool present = false;
  generate_types(dual_degree(LatticePolygon::triangle(3)), 1, 0, true, [&](const CombinatorialType& t) {
    present = present || canonical_form(t, LegLabeling::UnorderedEnds) == target;
  });
  CHECK(present);
}

TEST_CASE("reports are reproducible") {
  const auto a = report_to_json(count(LatticePolygon::triangle(3), 0, true, 9));
  const auto b = report_to_json(count(LatticePolygon::triangle(3), 0, true, 9));
  CHECK(a == b);
  CHECK(a.find("\"total\"") != std::string::npos);
}

TEST_CASE("invalid requests") {
  CountRequest req{LatticePolygon::triangle(1)};
  req.genus = -3;
  CHECK_THROWS_AS(count_curves(req), InvalidArgument);
  req.genus = 0;
  req.max_attempts = 0;
  CHECK_THROWS_AS(count_curves(req), InvalidArgument);
}

TEST_CASE("dimension bound audit on small polygons") {
  const AuditReport a = dimension_bound_audit(LatticePolygon::triangle(2), 0);
  CHECK(a.passed());
  CHECK(a.r == 6);
  CHECK(a.types_checked > 0);
  CHECK(a.contractions_checked > 0);
  CHECK(a.max_dimension < 2 * a.r);
  CHECK(dimension_bound_audit(LatticePolygon({{0, 0}, {2, 1}, {1, 2}}), 0).passed());
}

TEST_CASE("audit of plane cubics of genus one sees superabundant flat cycles") {
  const AuditReport a = dimension_bound_audit(LatticePolygon::triangle(3), 1);
  CHECK(a.passed());
  CHECK(a.r == 10);
  CHECK(a.superabundant > 0);
  CHECK(a.max_dimension == 2 * a.r);
  CHECK(a.max_image_dimension < 2 * a.r);
}
