#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tropenum/rational.hpp"

namespace tropenum {

// Univariate polynomial with rational coefficients, lowest degree first, no trailing zeros.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);
  static Polynomial constant(const Rational& c);
  static Polynomial monomial(const Rational& c, std::size_t degree);

  const std::vector<Rational>& coefficients() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rational& leading() const { return c_.back(); }
  // Index of the lowest nonzero coefficient; -1 for zero.
  int order_at_zero() const;
  Rational operator()(const Rational& x) const;
  Polynomial monic() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  // Quotient and remainder; throws InvalidArgument on division by zero.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;
  std::string to_string(std::string_view variable = "s") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(Polynomial a, Polynomial b);
// Determinant of the Sylvester matrix.
Rational resultant(const Polynomial& a, const Polynomial& b);
// Rational roots, ascending, without multiplicity.
std::vector<Rational> rational_roots(const Polynomial& p);

}  // namespace tropenum
