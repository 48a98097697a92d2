#include <doctest.h>

#include <optional>
#include <random>
#include <vector>

#include "tropenum/linear_algebra.hpp"
#include "tropenum/polynomial.hpp"

using namespace tropenum;

namespace {

RationalMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int spread) {
  std::uniform_int_distribution<int> pick(-spread, spread);
  RationalMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = pick(rng);
  }
  return m;
}

std::vector<Rational> times(const RationalMatrix& a, const std::vector<Rational>& x) {
  std::vector<Rational> out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out[r] += a.at(r, c) * x[c];
  }
  return out;
}

}  // namespace

TEST_CASE("solve_affine returns genuine solutions and a kernel of the right size") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = 1 + rng() % 5;
    const std::size_t cols = 1 + rng() % 6;
    // Duplicate a row now and then so rank deficiency is exercised.
    RationalMatrix a = random_matrix(rng, rows, cols, 3);
    if (rows > 1 && trial % 3 == 0) {
      for (std::size_t c = 0; c < cols; ++c) a.at(rows - 1, c) = 2 * a.at(0, c);
    }
    std::vector<Rational> x0(cols);
    for (auto& v : x0) v = static_cast<long>(rng() % 7) - 3;
    const auto b = times(a, x0);
    const AffineSolution sol = solve_affine(a, b);
    REQUIRE(sol.consistent);
    CHECK(times(a, sol.particular) == b);
    CHECK(rank(a) + sol.dimension() == cols);
    for (const auto& k : sol.kernel) CHECK(times(a, k) == std::vector<Rational>(rows));
  }
}

TEST_CASE("inconsistent systems are detected") {
  RationalMatrix a(2, 2);
  a.at(0, 0) = 1;
  a.at(0, 1) = 1;
  a.at(1, 0) = 2;
  a.at(1, 1) = 2;
  const std::vector<Rational> b{1, 3};
  CHECK_FALSE(solve_affine(a, b).consistent);
}

TEST_CASE("simplex: bounded, unbounded and infeasible programs") {
  // x + y + s = 4, maximize x + 2y
  RationalMatrix a(1, 3);
  a.at(0, 0) = 1;
  a.at(0, 1) = 1;
  a.at(0, 2) = 1;
  const std::vector<Rational> b{4};
  const std::vector<Rational> c{1, 2, 0};
  const LpResult best = maximize(a, b, c);
  REQUIRE(best.status == LpStatus::Optimal);
  CHECK(best.value == 8);

  // x - y = 1: y can grow without bound
  RationalMatrix u(1, 2);
  u.at(0, 0) = 1;
  u.at(0, 1) = -1;
  const std::vector<Rational> one{1};
  CHECK(maximize(u, one, std::vector<Rational>{0, 1}).status == LpStatus::Unbounded);

  // x + y = -1 with x, y >= 0
  RationalMatrix f(1, 2);
  f.at(0, 0) = 1;
  f.at(0, 1) = 1;
  const std::vector<Rational> neg{-1};
  CHECK(maximize(f, neg, std::vector<Rational>{1, 1}).status == LpStatus::Infeasible);
}

TEST_CASE("strict feasibility distinguishes open from closed faces") {
  // x - y = 0 with x > 0 is fine; x + y = 0 with x > 0, y > 0 is not.
  RationalMatrix a(1, 2);
  a.at(0, 0) = 1;
  a.at(0, 1) = -1;
  const std::vector<Rational> zero{0};
  const std::vector<std::size_t> both{0, 1};
  CHECK(strictly_feasible(a, zero, both));
  a.at(0, 1) = 1;
  CHECK_FALSE(strictly_feasible(a, zero, both));
  const std::vector<std::optional<Rational>> closed{Rational(0), Rational(0)};
  CHECK(feasible(a, zero, closed));
}

TEST_CASE("polynomial resultant and rational roots") {
  // (t - 1)(t + 2) and (t - 3): resultant is the product of values at the roots of the second.
  const Polynomial p(std::vector<Rational>{-2, 1, 1});
  const Polynomial q(std::vector<Rational>{-3, 1});
  CHECK(abs(resultant(p, q)) == abs(p(Rational(3))));
  const auto roots = rational_roots(p);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == -2);
  CHECK(roots[1] == 1);
  CHECK(gcd(p, Polynomial(std::vector<Rational>{-1, 1})) == Polynomial(std::vector<Rational>{-1, 1}));
}
