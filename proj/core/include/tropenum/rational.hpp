#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace tropenum {

using Rational = mpq_class;
using BigInt = mpz_class;

// Element of Z^2, used both for lattice points of M and for slopes in N.
struct LatticeVector {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend constexpr bool operator==(const LatticeVector&, const LatticeVector&) = default;
  friend constexpr auto operator<=>(const LatticeVector&, const LatticeVector&) = default;

  constexpr LatticeVector operator-() const { return {-x, -y}; }
  constexpr LatticeVector& operator+=(const LatticeVector& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr LatticeVector& operator-=(const LatticeVector& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  friend constexpr LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend constexpr LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend constexpr LatticeVector operator*(std::int64_t k, const LatticeVector& v) {
    return {k * v.x, k * v.y};
  }
  constexpr bool is_zero() const { return x == 0 && y == 0; }
};

using LatticePoint = LatticeVector;

constexpr std::int64_t dot(const LatticeVector& a, const LatticeVector& b) {
  return a.x * b.x + a.y * b.y;
}
constexpr std::int64_t cross(const LatticeVector& a, const LatticeVector& b) {
  return a.x * b.y - a.y * b.x;
}
// Counterclockwise quarter turn.
constexpr LatticeVector rotate_ccw(const LatticeVector& v) { return {-v.y, v.x}; }

// gcd(|x|, |y|); zero for the zero vector.
std::int64_t lattice_length(const LatticeVector& v);
LatticeVector primitive(const LatticeVector& v);
bool is_primitive(const LatticeVector& v);
std::string to_string(const LatticeVector& v);

struct RationalPoint {
  Rational x;
  Rational y;

  RationalPoint() = default;
  RationalPoint(Rational px, Rational py) : x(std::move(px)), y(std::move(py)) {}
  explicit RationalPoint(const LatticeVector& v) : x(static_cast<long>(v.x)), y(static_cast<long>(v.y)) {}

  friend bool operator==(const RationalPoint& a, const RationalPoint& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const RationalPoint& a, const RationalPoint& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
};

RationalPoint operator+(const RationalPoint& a, const RationalPoint& b);
RationalPoint operator-(const RationalPoint& a, const RationalPoint& b);
// p + t * v
RationalPoint along(const RationalPoint& p, const Rational& t, const LatticeVector& v);

// Always "p/q", including integers ("3/1"), so serialized rationals are uniform.
std::string fraction_string(const Rational& q);
// Accepts "p", "p/q", with optional sign; throws ParseError.
Rational parse_rational(std::string_view text);
std::string to_string(const RationalPoint& p);

}  // namespace tropenum
