#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "tropenum/errors.hpp"
#include "tropenum/valued_curves.hpp"

using namespace tropenum;

namespace {

std::int64_t mod(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

// Cusp example by hand: normals (-1,2), (-1,-1), (2,-1) at t = 0, 1, inf. The finite part
// of the log-derivative is n1/t + n2/(t-1), numerators (1 - 2t, t - 2).
std::vector<std::int64_t> cusp_brute(std::int64_t p) {
  std::vector<std::int64_t> out;
  for (std::int64_t t = 0; t < p; ++t) {
    if (t == 0 || t == 1 % p) continue;
    if (mod(1 - 2 * t, p) == 0 && mod(t - 2, p) == 0) out.push_back(t > p / 2 ? t - p : t);
  }
  return out;
}

}  // namespace

TEST_CASE("valued scalars") {
  const ValuedScalar a = ValuedScalar::parse("2*s^3/(1+s)");
  CHECK(a.valuation() == 3);
  CHECK(ValuedScalar::parse("1/s^2").valuation() == -2);
  CHECK(ValuedScalar::parse("s^2 - s^2").is_zero());
  CHECK((ValuedScalar::uniformizer() * ValuedScalar::uniformizer()).valuation() == 2);
  CHECK(ValuedScalar::parse("(1+s)/(1+s)") == ValuedScalar(Rational(1)));
  CHECK(ValuedScalar::parse("3/6").constant_value() == Rational(1, 2));
  CHECK_THROWS_AS(ValuedScalar::parse("s^"), ParseError);
  CHECK_THROWS_AS(ValuedScalar::parse("1/(s-s)"), ParseError);
  CHECK_THROWS_AS(ValuedScalar().valuation(), InvalidArgument);
}

TEST_CASE("baby example tropicalizes to two vertices joined by an edge of length v(mu)") {
  for (std::int64_t k = 1; k <= 3; ++k) {
    const BabyExample ex = baby_example(ValuedScalar::parse("s^" + std::to_string(k)));
    const ParamTropicalCurve c = tropicalize_rational(ex.spec, ex.marks);
    c.validate();
    const auto& g = c.type.graph();
    REQUIRE(g.vertex_count() == 2);
    REQUIRE(g.edges().size() == 1);
    CHECK(c.lengths[0] == k);
    std::set<RationalPoint> pos(c.positions.begin(), c.positions.end());
    CHECK(pos == std::set<RationalPoint>{RationalPoint(0, 0), RationalPoint(0, Rational(k))});
    const std::vector<LatticeVector> legs{{0, 0}, {0, -1}, {1, 1}, {-1, 0}};
    CHECK(c.type.leg_slopes() == legs);
    CHECK(check_balancing(c.type));
  }
}

TEST_CASE("marks may not collide with side points") {
  BabyExample ex = baby_example(ValuedScalar::parse("s"));
  ex.marks = {PointOnLine::finite(Rational(0))};
  CHECK_THROWS_AS(tropicalize_rational(ex.spec, ex.marks), MarkCollision);
}

TEST_CASE("pullback divisors of the baby example") {
  const BabyExample ex = baby_example(ValuedScalar::parse("s"));
  for (const LatticeVector m : {LatticeVector{1, 0}, LatticeVector{0, 1}, LatticeVector{2, -3}}) {
    const auto div = pullback_divisor(ex.spec, m);
    std::int64_t degree = 0;
    for (const auto& term : div) {
      CHECK(term.order != 0);
      degree += term.order;
    }
    CHECK(degree == 0);
  }
}

TEST_CASE("non-immersion points of the cusp example") {
  for (std::int64_t p : {3, 5, 7, 11}) {
    const auto got = non_immersion_points(cusp_example(p));
    std::vector<std::int64_t> values;
    for (const auto& q : got) {
      REQUIRE_FALSE(q.infinite);
      values.push_back(q.value.constant_value().get_num().get_si());
    }
    CHECK(values == cusp_brute(p));
  }
  const auto f3 = non_immersion_points(cusp_example(3));
  REQUIRE(f3.size() == 1);
  CHECK(f3[0].value.constant_value() == -1);
  CHECK(non_immersion_points(cusp_example(0)).empty());
  CHECK(non_immersion_points(cusp_example(5)).empty());
  // (1 - 2t, t - 2) has resultant +-3: only characteristic 3 can merge the two roots.
  CHECK(abs(numerator_resultant(cusp_example(0))) == 3);
}

TEST_CASE("spec validation") {
  RationalCurveSpec s = cusp_example(0);
  s.side_points.pop_back();
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
  s = cusp_example(4);
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
  s = cusp_example(0);
  s.side_points[1] = {PointOnLine::finite(Rational(0))};
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
  s = cusp_example(3);
  s.side_points[1] = {PointOnLine::finite(Rational(3))};
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
}
