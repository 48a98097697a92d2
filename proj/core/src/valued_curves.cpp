#include "tropenum/valued_curves.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <limits>
#include <map>

#include "tropenum/errors.hpp"

namespace tropenum {

// ---------------------------------------------------------------------------
// ValuedScalar

ValuedScalar::ValuedScalar(const Rational& c) : num_(Polynomial::constant(c)) {}

ValuedScalar::ValuedScalar(Polynomial numerator, Polynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) throw InvalidArgument("zero denominator");
  normalize();
}

ValuedScalar ValuedScalar::uniformizer() { return {Polynomial::monomial(1, 1), Polynomial::constant(1)}; }

void ValuedScalar::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial::constant(1);
    return;
  }
  const Polynomial g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = num_.divmod(g).first;
    den_ = den_.divmod(g).first;
  }
  const Rational lead = den_.leading();
  num_ = num_ * Polynomial::constant(1 / lead);
  den_ = den_.monic();
}

Rational ValuedScalar::constant_value() const {
  if (!is_constant()) throw InvalidArgument("scalar " + to_string() + " is not a constant");
  return num_.is_zero() ? Rational(0) : num_.coefficients()[0];
}

std::int64_t ValuedScalar::valuation() const {
  if (is_zero()) throw InvalidArgument("valuation of zero");
  return num_.order_at_zero() - den_.order_at_zero();
}

ValuedScalar operator+(const ValuedScalar& a, const ValuedScalar& b) {
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}
ValuedScalar operator-(const ValuedScalar& a, const ValuedScalar& b) {
  return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
}
ValuedScalar operator*(const ValuedScalar& a, const ValuedScalar& b) { return {a.num_ * b.num_, a.den_ * b.den_}; }
ValuedScalar operator/(const ValuedScalar& a, const ValuedScalar& b) {
  if (b.is_zero()) throw InvalidArgument("division by zero");
  return {a.num_ * b.den_, a.den_ * b.num_};
}

std::string ValuedScalar::to_string() const {
  if (den_.degree() == 0) return num_.to_string("s");
  return "(" + num_.to_string("s") + ")/(" + den_.to_string("s") + ")";
}

namespace {

class ScalarParser {
 public:
  explicit ScalarParser(std::string_view text) : text_(text) {}

  ValuedScalar parse() {
    ValuedScalar v = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("scalar '" + std::string(text_) + "': " + what + " at position " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  ValuedScalar expr() {
    ValuedScalar v = term();
    for (;;) {
      if (eat('+')) v = v + term();
      else if (eat('-')) v = v - term();
      else return v;
    }
  }
  ValuedScalar term() {
    ValuedScalar v = factor();
    for (;;) {
      if (eat('*')) {
        v = v * factor();
      } else if (eat('/')) {
        ValuedScalar d = factor();
        if (d.is_zero()) fail("division by zero");
        v = v / d;
      } else {
        skip();
        // Implicit product such as "2s" or "3(1+s)".
        if (pos_ < text_.size() && (text_[pos_] == 's' || text_[pos_] == '(')) v = v * factor();
        else return v;
      }
    }
  }
  ValuedScalar factor() {
    if (eat('-')) return ValuedScalar(Rational(0)) - factor();
    if (eat('+')) return factor();
    ValuedScalar b = base();
    if (eat('^')) {
      skip();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      const int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
      ValuedScalar r(Rational(1));
      for (int i = 0; i < e; ++i) r = r * b;
      return r;
    }
    return b;
  }
  ValuedScalar base() {
    skip();
    if (eat('(')) {
      ValuedScalar v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (pos_ < text_.size() && text_[pos_] == 's') {
      ++pos_;
      return ValuedScalar::uniformizer();
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number, 's' or '('");
    return ValuedScalar(Rational(BigInt(std::string(text_.substr(start, pos_ - start)))));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::int64_t mod(const BigInt& v, std::int64_t p) {
  BigInt r = v % p;
  if (r < 0) r += p;
  return r.get_si();
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t p) {
  BigInt inv;
  const BigInt aa = a, pp = p;
  if (mpz_invert(inv.get_mpz_t(), aa.get_mpz_t(), pp.get_mpz_t()) == 0) {
    throw InvalidArgument("value not invertible mod " + std::to_string(p));
  }
  return inv.get_si();
}

std::int64_t residue(const Rational& q, std::int64_t p) {
  return mod(BigInt(q.get_num()) * inverse_mod(mod(q.get_den(), p), p), p);
}

std::int64_t symmetric(std::int64_t r, std::int64_t p) { return r > p / 2 ? r - p : r; }

struct SidePoint {
  PointOnLine point;
  LatticeVector normal;
};

std::vector<SidePoint> collect_side_points(const RationalCurveSpec& spec) {
  std::vector<SidePoint> out;
  const auto sides = spec.polygon.sides();
  for (std::size_t i = 0; i < sides.size(); ++i) {
    for (const auto& p : spec.side_points[i]) out.push_back({p, sides[i].inner_normal});
  }
  return out;
}

}  // namespace

ValuedScalar ValuedScalar::parse(std::string_view text) { return ScalarParser(text).parse(); }

std::string PointOnLine::to_string() const { return infinite ? "inf" : value.to_string(); }

// ---------------------------------------------------------------------------
// Specs

void RationalCurveSpec::validate() const {
  const auto sides = polygon.sides();
  if (side_points.size() != sides.size()) throw InvalidArgument("one point list per polygon side required");
  LatticeVector total;
  for (std::size_t i = 0; i < sides.size(); ++i) {
    if (static_cast<std::int64_t>(side_points[i].size()) != sides[i].integral_length) {
      throw InvalidArgument("side " + std::to_string(i) + " needs " + std::to_string(sides[i].integral_length) + " points");
    }
    total += sides[i].integral_length * sides[i].inner_normal;
  }
  if (!total.is_zero()) throw InvalidArgument("side data is not balanced");
  if (characteristic != 0 && !is_prime(characteristic)) throw InvalidArgument("characteristic must be 0 or a prime");
  if (character.first.is_zero() || character.second.is_zero()) throw InvalidArgument("character values must be nonzero");
  const auto pts = collect_side_points(*this);
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      const auto& p = pts[a].point;
      const auto& q = pts[b].point;
      bool same = p.infinite == q.infinite && (p.infinite || p.value == q.value);
      if (characteristic != 0 && !p.infinite && !q.infinite) {
        same = residue(p.value.constant_value(), characteristic) == residue(q.value.constant_value(), characteristic);
      }
      if (same) throw InvalidArgument("side points must be pairwise distinct");
    }
  }
}

std::vector<DivisorTerm> pullback_divisor(const RationalCurveSpec& spec, const LatticeVector& m) {
  spec.validate();
  std::vector<DivisorTerm> out;
  DivisorTerm infinity{PointOnLine::at_infinity(), 0};
  for (const auto& sp : collect_side_points(spec)) {
    const std::int64_t c = dot(sp.normal, m);
    if (sp.point.infinite) {
      infinity.order += c;
      continue;
    }
    auto it = std::find_if(out.begin(), out.end(), [&](const DivisorTerm& t) { return t.point == sp.point; });
    if (it == out.end()) out.push_back({sp.point, c});
    else it->order += c;
  }
  out.push_back(infinity);
  std::erase_if(out, [](const DivisorTerm& t) { return t.order == 0; });
  return out;
}

std::pair<Polynomial, Polynomial> log_derivative_numerators(const RationalCurveSpec& spec) {
  spec.validate();
  std::vector<SidePoint> finite;
  for (auto& sp : collect_side_points(spec)) {
    if (!sp.point.infinite) finite.push_back(sp);
  }
  Polynomial nx, ny;
  for (std::size_t i = 0; i < finite.size(); ++i) {
    Polynomial prod = Polynomial::constant(1);
    for (std::size_t k = 0; k < finite.size(); ++k) {
      if (k != i) prod = prod * Polynomial({-finite[k].point.value.constant_value(), Rational(1)});
    }
    nx = nx + prod * Polynomial::constant(static_cast<long>(finite[i].normal.x));
    ny = ny + prod * Polynomial::constant(static_cast<long>(finite[i].normal.y));
  }
  return {nx, ny};
}

Rational numerator_resultant(const RationalCurveSpec& spec) {
  const auto [nx, ny] = log_derivative_numerators(spec);
  return resultant(nx, ny);
}

std::vector<PointOnLine> non_immersion_points(const RationalCurveSpec& spec) {
  spec.validate();
  const auto pts = collect_side_points(spec);
  const bool infinity_is_side = std::any_of(pts.begin(), pts.end(), [](const SidePoint& s) { return s.point.infinite; });
  std::vector<PointOnLine> out;
  const std::int64_t p = spec.characteristic;
  if (p == 0) {
    const auto [nx, ny] = log_derivative_numerators(spec);
    if (nx.is_zero() && ny.is_zero()) throw InvalidArgument("log-derivative vanishes identically");
    const Polynomial g = gcd(nx, ny);
    if (g.degree() > 0) {
      for (const auto& t : rational_roots(g)) {
        const PointOnLine pt = PointOnLine::finite(t);
        if (std::none_of(pts.begin(), pts.end(), [&](const SidePoint& s) { return s.point == pt; })) out.push_back(pt);
      }
    }
    if (!infinity_is_side) {
      Rational sx = 0, sy = 0;
      for (const auto& s : pts) {
        const Rational v = s.point.value.constant_value();
        sx += v * static_cast<long>(s.normal.x);
        sy += v * static_cast<long>(s.normal.y);
      }
      if (sgn(sx) == 0 && sgn(sy) == 0) out.push_back(PointOnLine::at_infinity());
    }
    return out;
  }
  std::vector<std::pair<std::int64_t, LatticeVector>> finite;
  for (const auto& s : pts) {
    if (!s.point.infinite) finite.push_back({residue(s.point.value.constant_value(), p), s.normal});
  }
  std::vector<std::int64_t> hits;
  for (std::int64_t t = 0; t < p; ++t) {
    if (std::any_of(finite.begin(), finite.end(), [&](const auto& f) { return f.first == t; })) continue;
    std::int64_t sx = 0, sy = 0;
    for (const auto& [q, n] : finite) {
      const std::int64_t inv = inverse_mod((t - q + p) % p, p);
      sx = mod(BigInt(static_cast<long>(sx)) + BigInt(static_cast<long>(n.x)) * inv, p);
      sy = mod(BigInt(static_cast<long>(sy)) + BigInt(static_cast<long>(n.y)) * inv, p);
    }
    if (sx == 0 && sy == 0) hits.push_back(symmetric(t, p));
  }
  std::sort(hits.begin(), hits.end());
  for (auto t : hits) out.push_back(PointOnLine::finite(Rational(static_cast<long>(t))));
  if (!infinity_is_side) {
    std::int64_t sx = 0, sy = 0;
    for (const auto& [q, n] : finite) {
      sx = mod(BigInt(static_cast<long>(sx)) + BigInt(static_cast<long>(n.x)) * q, p);
      sy = mod(BigInt(static_cast<long>(sy)) + BigInt(static_cast<long>(n.y)) * q, p);
    }
    if (sx == 0 && sy == 0) out.push_back(PointOnLine::at_infinity());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tropicalization

ParamTropicalCurve tropicalize_rational(const RationalCurveSpec& spec, const std::vector<PointOnLine>& marks) {
  spec.validate();
  if (spec.characteristic != 0) throw InvalidArgument("tropicalization needs the valued field (characteristic 0)");
  struct Special {
    PointOnLine point;
    LatticeVector normal;  // zero for marks
  };
  std::vector<Special> special;
  for (const auto& m : marks) special.push_back({m, {0, 0}});
  for (const auto& sp : collect_side_points(spec)) special.push_back({sp.point, sp.normal});
  for (std::size_t a = 0; a < special.size(); ++a) {
    for (std::size_t b = a + 1; b < special.size(); ++b) {
      if (special[a].point == special[b].point) {
        throw MarkCollision("marked point " + special[a].point.to_string() + " coincides with another special point");
      }
    }
  }
  if (special.size() < 3) throw InvalidArgument("at least three special points are needed");

  std::vector<std::size_t> fin;  // indices into special of finite points
  std::size_t inf_index = special.size();
  for (std::size_t i = 0; i < special.size(); ++i) {
    if (special[i].point.infinite) inf_index = i;
    else fin.push_back(i);
  }
  if (fin.size() > 63) throw InvalidArgument("too many special points");
  const std::size_t n = fin.size();
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
  std::vector<std::vector<std::int64_t>> val(n, std::vector<std::int64_t>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      val[i][j] = val[j][i] = (special[fin[i]].point.value - special[fin[j]].point.value).valuation();
    }
  }
  // Balls B(a, rho) spanned by pairs, keyed by their member set.
  struct Ball {
    std::int64_t radius;
    std::size_t center;
  };
  std::map<std::uint64_t, Ball> balls;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      std::uint64_t members = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (val[i][k] >= val[i][j]) members |= std::uint64_t{1} << k;
      }
      balls.try_emplace(members, Ball{val[i][j], i});
    }
  }
  if (balls.empty()) throw InvalidArgument("at least two finite special points are needed");
  std::vector<std::uint64_t> keys;
  for (const auto& [k, b] : balls) keys.push_back(k);
  auto smallest_containing = [&](std::uint64_t set, bool strict) {
    std::size_t best = keys.size();
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if ((keys[i] & set) != set || (strict && keys[i] == set)) continue;
      if (best == keys.size() || std::popcount(keys[i]) < std::popcount(keys[best])) best = i;
    }
    return best;
  };

  const LatticeVector val_chi{spec.character.first.valuation(), spec.character.second.valuation()};
  std::vector<RationalPoint> positions;
  for (auto key : keys) {
    const Ball& b = balls.at(key);
    LatticeVector h = -val_chi;
    for (std::size_t k = 0; k < n; ++k) {
      h -= std::min(b.radius, val[b.center][k]) * special[fin[k]].normal;
    }
    positions.emplace_back(h);
  }
  std::vector<GraphEdge> edges;
  std::vector<LatticeVector> slopes;
  std::vector<Rational> lengths;
  std::size_t root = keys.size();
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const std::size_t parent = smallest_containing(keys[i], true);
    if (parent == keys.size()) {
      root = i;
      continue;
    }
    LatticeVector s;
    for (std::size_t k = 0; k < n; ++k) {
      if (keys[i] >> k & 1) s -= special[fin[k]].normal;
    }
    edges.push_back({parent, i});
    slopes.push_back(s);
    lengths.emplace_back(static_cast<long>(balls.at(keys[i]).radius - balls.at(keys[parent]).radius));
  }
  std::vector<std::size_t> anchors(special.size());
  std::vector<LatticeVector> leg_slopes(special.size());
  for (std::size_t k = 0; k < n; ++k) {
    anchors[fin[k]] = smallest_containing(std::uint64_t{1} << k, false);
    leg_slopes[fin[k]] = -special[fin[k]].normal;
  }
  if (inf_index < special.size()) {
    anchors[inf_index] = root;
    leg_slopes[inf_index] = -special[inf_index].normal;
  }

  // Without a point at infinity the root may be 2-valent; smooth it away.
  std::size_t vertex_count = keys.size();
  if (inf_index == special.size()) {
    std::vector<std::size_t> at_root_edges;
    std::vector<std::size_t> at_root_legs;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (edges[e].tail == root) at_root_edges.push_back(e);
    }
    for (std::size_t l = 0; l < anchors.size(); ++l) {
      if (anchors[l] == root) at_root_legs.push_back(l);
    }
    if (at_root_edges.size() + at_root_legs.size() == 2 && !at_root_edges.empty()) {
      const std::size_t e0 = at_root_edges[0];
      if (at_root_edges.size() == 2) {
        const std::size_t e1 = at_root_edges[1];
        edges[e0] = {edges[e0].head, edges[e1].head};
        slopes[e0] = slopes[e1];
        lengths[e0] += lengths[e1];
        edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(e1));
        slopes.erase(slopes.begin() + static_cast<std::ptrdiff_t>(e1));
        lengths.erase(lengths.begin() + static_cast<std::ptrdiff_t>(e1));
      } else {
        anchors[at_root_legs[0]] = edges[e0].head;
        edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(e0));
        slopes.erase(slopes.begin() + static_cast<std::ptrdiff_t>(e0));
        lengths.erase(lengths.begin() + static_cast<std::ptrdiff_t>(e0));
      }
      positions.erase(positions.begin() + static_cast<std::ptrdiff_t>(root));
      auto shift = [&](std::size_t v) { return v > root ? v - 1 : v; };
      for (auto& e : edges) e = {shift(e.tail), shift(e.head)};
      for (auto& a : anchors) a = shift(a);
      --vertex_count;
    }
  }

  ParamTropicalCurve curve;
  curve.type = CombinatorialType(Graph(vertex_count, std::move(edges), std::move(anchors)),
                                 std::vector<int>(vertex_count, 0), std::move(slopes), std::move(leg_slopes));
  curve.lengths = std::move(lengths);
  curve.positions = std::move(positions);
  curve.validate();
  return curve;
}

BabyExample baby_example(const ValuedScalar& mu) {
  RationalCurveSpec spec{LatticePolygon::triangle(1), {}, {Rational(1), Rational(1)}, 0};
  spec.side_points = {{PointOnLine::at_infinity()}, {PointOnLine::finite(Rational(0))}, {PointOnLine::finite(mu)}};
  return {std::move(spec), {PointOnLine::finite(Rational(1))}};
}

RationalCurveSpec cusp_example(std::int64_t characteristic) {
  RationalCurveSpec spec{LatticePolygon({{0, 0}, {2, 1}, {1, 2}}), {}, {Rational(1), Rational(1)}, characteristic};
  spec.side_points = {{PointOnLine::finite(Rational(0))}, {PointOnLine::finite(Rational(1))}, {PointOnLine::at_infinity()}};
  return spec;
}

}  // namespace tropenum
