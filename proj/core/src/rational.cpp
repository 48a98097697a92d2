#include "tropenum/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <numeric>

#include "tropenum/errors.hpp"

namespace tropenum {

std::int64_t lattice_length(const LatticeVector& v) { return std::gcd(std::llabs(v.x), std::llabs(v.y)); }

LatticeVector primitive(const LatticeVector& v) {
  const std::int64_t k = lattice_length(v);
  if (k == 0) return v;
  return {v.x / k, v.y / k};
}

bool is_primitive(const LatticeVector& v) { return lattice_length(v) == 1; }

std::string to_string(const LatticeVector& v) {
  return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
}

RationalPoint operator+(const RationalPoint& a, const RationalPoint& b) { return {a.x + b.x, a.y + b.y}; }
RationalPoint operator-(const RationalPoint& a, const RationalPoint& b) { return {a.x - b.x, a.y - b.y}; }

RationalPoint along(const RationalPoint& p, const Rational& t, const LatticeVector& v) {
  return {p.x + t * static_cast<long>(v.x), p.y + t * static_cast<long>(v.y)};
}

std::string fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto integer = [](std::string_view s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) throw ParseError("empty integer in rational");
    for (std::size_t j = i; j < s.size(); ++j) {
      if (!std::isdigit(static_cast<unsigned char>(s[j]))) throw ParseError("bad digit in rational: " + std::string(s));
    }
    std::string digits(s);
    if (digits[0] == '+') digits.erase(0, 1);
    return BigInt(digits, 10);
  };
  text = trim(text);
  const auto slash = text.find('/');
  Rational q;
  if (slash == std::string_view::npos) {
    q = Rational(integer(text));
  } else {
    BigInt den = integer(trim(text.substr(slash + 1)));
    if (den == 0) throw ParseError("zero denominator");
    q = Rational(integer(trim(text.substr(0, slash))), den);
    q.canonicalize();
  }
  return q;
}

std::string to_string(const RationalPoint& p) { return "(" + fraction_string(p.x) + "," + fraction_string(p.y) + ")"; }

}  // namespace tropenum
