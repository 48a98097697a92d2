#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tropenum/lattice_geometry.hpp"
#include "tropenum/polynomial.hpp"
#include "tropenum/tropical_graphs.hpp"

namespace tropenum {

// Rational function in the uniformizer s over Q; the valuation is the order at s = 0.
class ValuedScalar {
 public:
  ValuedScalar() = default;  // zero
  ValuedScalar(const Rational& c);  // NOLINT(google-explicit-constructor)
  ValuedScalar(Polynomial numerator, Polynomial denominator);
  static ValuedScalar uniformizer();
  // Expressions in s with + - * / ^, integers and parentheses, e.g. "2*s^3/(1+s)".
  static ValuedScalar parse(std::string_view text);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  Rational constant_value() const;  // throws InvalidArgument unless is_constant()
  // Throws InvalidArgument for zero.
  std::int64_t valuation() const;

  friend ValuedScalar operator+(const ValuedScalar& a, const ValuedScalar& b);
  friend ValuedScalar operator-(const ValuedScalar& a, const ValuedScalar& b);
  friend ValuedScalar operator*(const ValuedScalar& a, const ValuedScalar& b);
  friend ValuedScalar operator/(const ValuedScalar& a, const ValuedScalar& b);
  friend bool operator==(const ValuedScalar&, const ValuedScalar&) = default;

  std::string to_string() const;

 private:
  void normalize();
  Polynomial num_;
  Polynomial den_ = Polynomial::constant(1);
};

// A point of P^1: a finite value or infinity.
struct PointOnLine {
  bool infinite = false;
  ValuedScalar value;

  static PointOnLine at_infinity() { return {true, {}}; }
  static PointOnLine finite(ValuedScalar v) { return {false, std::move(v)}; }
  friend bool operator==(const PointOnLine&, const PointOnLine&) = default;
  std::string to_string() const;
};

// Genus-0 curve P^1 -> X_polygon sending the points side_points[i] to the i-th side (in
// polygon.sides() order), with f^*(x^m) = chi(m) prod (t - p_ij)^(n_i, m).
// characteristic 0 works over Q (or the valued field); a prime p reduces the (constant)
// points mod p.
struct RationalCurveSpec {
  LatticePolygon polygon;
  std::vector<std::vector<PointOnLine>> side_points;
  std::pair<ValuedScalar, ValuedScalar> character{Rational(1), Rational(1)};
  std::int64_t characteristic = 0;

  // Checks side/point counts, sum k_i n_i = 0 and that all points are distinct.
  void validate() const;
};

struct DivisorTerm {
  PointOnLine point;
  std::int64_t order = 0;
};

// div f^*(x^m) = sum (n_i, m) p_ij, equal points merged, zero terms dropped; finite points
// first in the order of first appearance, then infinity.
std::vector<DivisorTerm> pullback_divisor(const RationalCurveSpec& spec, const LatticeVector& m);

// Numerators of the two coordinates of sum_ij n_i / (t - p_ij) over the finite points.
std::pair<Polynomial, Polynomial> log_derivative_numerators(const RationalCurveSpec& spec);

// Points t outside the side points where every log-derivative of f^*(x^m) vanishes. Over Q
// only rational points are reported; over F_p points are given by residues in
// (-p/2, p/2]. Infinity qualifies, when it is not a side point, iff sum n_i p_ij = 0.
std::vector<PointOnLine> non_immersion_points(const RationalCurveSpec& spec);

// Resultant of the two numerators above: a prime dividing it is the only way to gain
// non-immersion points that do not exist over Q.
Rational numerator_resultant(const RationalCurveSpec& spec);

// Tropicalization of a genus-0 curve over the valued field, with extra marked points in
// the torus. The tree is spanned by all special points; each vertex is a ball of P^1 and
// lengths are differences of radii. Legs: marks in the given order (contracted), then side
// points in side order. Throws MarkCollision if a mark meets another special point.
ParamTropicalCurve tropicalize_rational(const RationalCurveSpec& spec, const std::vector<PointOnLine>& marks);

// The line x + mu y = z in P^2 with t = z/y: p1 = 1 (mark), p2 = infinity, p3 = 0, p4 = mu.
struct BabyExample {
  RationalCurveSpec spec;
  std::vector<PointOnLine> marks;
};
BabyExample baby_example(const ValuedScalar& mu);

// Triangle (0,0),(2,1),(1,2) with 0, 1, infinity on its three sides.
RationalCurveSpec cusp_example(std::int64_t characteristic);

}  // namespace tropenum
