#include "tropenum/polynomial.hpp"

#include <algorithm>
#include <set>

#include "tropenum/errors.hpp"

namespace tropenum {

Polynomial::Polynomial(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1, Rational(0));
  v[degree] = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

int Polynomial::order_at_zero() const {
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) != 0) return static_cast<int>(i);
  }
  return -1;
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational v = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
  return v;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  std::vector<Rational> v(c_);
  const Rational lead = leading();
  for (auto& x : v) x /= lead;
  return Polynomial(std::move(v));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
  return Polynomial(std::move(v));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return Polynomial(std::move(v));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw InvalidArgument("polynomial division by zero");
  std::vector<Rational> rem(c_);
  const int dd = divisor.degree();
  std::vector<Rational> quo(static_cast<std::size_t>(std::max(0, degree() - dd + 1)), Rational(0));
  for (int k = degree() - dd; k >= 0; --k) {
    const Rational q = rem[static_cast<std::size_t>(k + dd)] / divisor.leading();
    quo[static_cast<std::size_t>(k)] = q;
    for (int i = 0; i <= dd; ++i) rem[static_cast<std::size_t>(k + i)] -= q * divisor.c_[static_cast<std::size_t>(i)];
  }
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

std::string Polynomial::to_string(std::string_view variable) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const Rational& c = c_[i];
    if (sgn(c) == 0) continue;
    Rational a = abs(c);
    if (!out.empty()) out += sgn(c) < 0 ? " - " : " + ";
    else if (sgn(c) < 0) out += "-";
    const bool unit = a == 1;
    if (i == 0 || !unit) out += a.get_str();
    if (i > 0) {
      if (!unit) out += "*";
      out += variable;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Rational resultant(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  const auto m = static_cast<std::size_t>(a.degree()), n = static_cast<std::size_t>(b.degree());
  const std::size_t size = m + n;
  if (size == 0) return 1;
  std::vector<std::vector<Rational>> s(size, std::vector<Rational>(size, Rational(0)));
  // Rows hold coefficients from the highest degree down.
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i <= m; ++i) s[r][r + i] = a.coefficients()[m - i];
  }
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t i = 0; i <= n; ++i) s[n + r][r + i] = b.coefficients()[n - i];
  }
  Rational det = 1;
  for (std::size_t col = 0; col < size; ++col) {
    std::size_t pivot = col;
    while (pivot < size && sgn(s[pivot][col]) == 0) ++pivot;
    if (pivot == size) return 0;
    if (pivot != col) {
      std::swap(s[pivot], s[col]);
      det = -det;
    }
    det *= s[col][col];
    for (std::size_t r = col + 1; r < size; ++r) {
      if (sgn(s[r][col]) == 0) continue;
      const Rational f = s[r][col] / s[col][col];
      for (std::size_t c = col; c < size; ++c) s[r][c] -= f * s[col][c];
    }
  }
  return det;
}

namespace {

std::vector<BigInt> divisors(BigInt n) {
  n = abs(n);
  std::vector<BigInt> out;
  for (BigInt d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

}  // namespace

std::vector<Rational> rational_roots(const Polynomial& p) {
  if (p.is_zero()) throw InvalidArgument("the zero polynomial has every root");
  std::set<Rational> roots;
  const int z = p.order_at_zero();
  if (z > 0) roots.insert(Rational(0));
  // Integer coefficients of p / s^z.
  BigInt lcm = 1;
  for (const auto& c : p.coefficients()) lcm = lcm * c.get_den() / gcd(lcm, BigInt(c.get_den()));
  std::vector<BigInt> ints;
  for (std::size_t i = static_cast<std::size_t>(z); i < p.coefficients().size(); ++i) {
    ints.push_back(BigInt(p.coefficients()[i] * lcm));
  }
  if (ints.size() > 1) {
    for (const auto& num : divisors(ints.front())) {
      for (const auto& den : divisors(ints.back())) {
        for (int sign : {1, -1}) {
          Rational cand(BigInt(sign * num), den);
          cand.canonicalize();
          if (sgn(p(cand)) == 0) roots.insert(cand);
        }
      }
    }
  }
  return {roots.begin(), roots.end()};
}

}  // namespace tropenum
