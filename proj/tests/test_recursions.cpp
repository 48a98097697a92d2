#include <doctest.h>

#include <json.hpp>

#include "tropenum/errors.hpp"
#include "tropenum/recursions.hpp"

using namespace tropenum;

namespace {

// N_d = sum_{a+b=d} N_a N_b (a^2 b^2 C(3d-4, 3a-2) - a^3 b C(3d-4, 3a-1)).
BigInt kontsevich_oracle(long d) {
  std::vector<BigInt> n(static_cast<std::size_t>(d) + 1, 0);
  n[1] = 1;
  for (long e = 2; e <= d; ++e) {
    BigInt s = 0;
    for (long a = 1; a < e; ++a) {
      const long b = e - a;
      BigInt c1, c2;
      mpz_bin_uiui(c1.get_mpz_t(), static_cast<unsigned long>(3 * e - 4), static_cast<unsigned long>(3 * a - 2));
      mpz_bin_uiui(c2.get_mpz_t(), static_cast<unsigned long>(3 * e - 4), static_cast<unsigned long>(3 * a - 1));
      s += n[static_cast<std::size_t>(a)] * n[static_cast<std::size_t>(b)] * (a * a * b * b * c1 - a * a * a * b * c2);
    }
    n[static_cast<std::size_t>(e)] = s;
  }
  return n[static_cast<std::size_t>(d)];
}

// Unions of d lines through 2d points: perfect matchings of 2d labelled points.
BigInt line_unions(long d) {
  BigInt m = 1;
  for (long k = 2 * d - 1; k > 0; k -= 2) m *= k;
  return m;
}

}  // namespace

TEST_CASE("Kontsevich numbers") {
  CHECK(kontsevich(1) == 1);
  CHECK(kontsevich(2) == 1);
  CHECK(kontsevich(3) == 12);
  CHECK(kontsevich(4) == 620);
  for (long d = 1; d <= 9; ++d) CHECK(kontsevich(d) == kontsevich_oracle(d));
  CHECK_THROWS_AS(kontsevich(0), InvalidArgument);
}

TEST_CASE("Severi degrees: closed forms") {
  for (long d = 1; d <= 6; ++d) CHECK(severi_degree(d, 0) == 1);
  for (long d = 2; d <= 6; ++d) CHECK(severi_degree(d, 1) == 3 * (d - 1) * (d - 1));
  for (long d = 3; d <= 6; ++d) CHECK(severi_degree(d, 2) == 3 * (d - 1) * (d - 2) * (3 * d * d - 3 * d - 11) / 2);
  for (long d = 1; d <= 5; ++d) CHECK(severi_degree(d, d * (d - 1) / 2) == line_unions(d));
}

TEST_CASE("nodal cubics and conics are rational") {
  // A reducible cubic has at least two nodes, so every one-nodal cubic is irreducible of genus 0.
  CHECK(severi_degree(3, 1) == kontsevich(3));
  CHECK(severi_degree(2, 0) == kontsevich(2));
}

TEST_CASE("memoized and plain evaluation agree") {
  for (long d = 1; d <= 4; ++d) {
    for (long delta = 0; delta <= d * (d - 1) / 2; ++delta) {
      const TangencyProfile p({}, {d});
      CHECK(caporaso_harris(d, delta, p, false) == caporaso_harris(d, delta, p, true));
    }
  }
}

TEST_CASE("tangency profiles") {
  CHECK(TangencyProfile({1, 0, 0}, {2, 0}) == TangencyProfile({1}, {2}));
  CHECK(TangencyProfile::weight({1, 2}) == 5);
  CHECK(TangencyProfile::power_weight({0, 2, 1}) == 12);
  CHECK(TangencyProfile::length({1, 2}) == 3);
  // One line through a fixed point of L and one more point.
  CHECK(caporaso_harris(1, 0, TangencyProfile({1}, {})) == 1);
  CHECK_THROWS_AS(caporaso_harris(2, 0, TangencyProfile({}, {1})), InconsistentProfile);
  CHECK_THROWS_AS(caporaso_harris(0, 0, TangencyProfile({}, {})), InvalidArgument);
  CHECK_THROWS_AS(caporaso_harris(1, 0, TangencyProfile({-1, 1}, {})), InvalidArgument);
}

TEST_CASE("tables") {
  const std::string tsv = kontsevich_table(4, TableFormat::Tsv);
  CHECK(tsv.find("4\t620") != std::string::npos);
  const auto j = nlohmann::json::parse(severi_table(3, TableFormat::Json));
  REQUIRE(j.is_array());
  CHECK(j.size() == 7);
}
