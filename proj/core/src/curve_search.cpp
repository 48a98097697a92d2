#include "curve_search.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <stdexcept>

#include "tropenum/errors.hpp"

namespace tropenum::detail {

struct CurveSearch::Node {
  enum class Kind { End, Junction, Mark, Pin, Split };
  Kind kind = Kind::End;
  LatticeVector slope;   // edge entering this piece from its parent
  FixedPoint point;      // junction or root position
  std::int64_t index = -1;
  NodePtr first;
  NodePtr second;
  std::uint64_t multiplicity = 1;
  bool degenerate = false;
};

namespace {

std::uint64_t times(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("multiplicity overflow");
  return r;
}

bool positive_half(const LatticeVector& v) { return v.x > 0 || (v.x == 0 && v.y > 0); }

__extension__ typedef __int128 Wide;

std::int64_t narrow(Wide v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("coordinate overflow in curve search");
  return static_cast<std::int64_t>(v);
}

Wide wide_gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int sign(Wide v) { return (v > 0) - (v < 0); }

struct Meeting {
  int t_sign = 0;
  int u_sign = 0;
  FixedPoint point;  // p + t*a
};

// Intersection p + t*a = q + u*b of two non-parallel lines. Returns nullopt when the lines are
// parallel or either parameter is negative.
std::optional<Meeting> meet(const FixedPoint& p, const LatticeVector& a, const FixedPoint& q, const LatticeVector& b) {
  const std::int64_t det = tropenum::cross(a, b);
  if (det == 0) return std::nullopt;
  // d = q - p over the denominator p.d * q.d
  const Wide dx = Wide(q.x) * p.d - Wide(p.x) * q.d;
  const Wide dy = Wide(q.y) * p.d - Wide(p.y) * q.d;
  const Wide nt = dx * b.y - dy * b.x;  // t = nt / (p.d * q.d * det)
  const Wide nu = dx * a.y - dy * a.x;
  const int ds = det > 0 ? 1 : -1;
  Meeting m;
  m.t_sign = sign(nt) * ds;
  m.u_sign = sign(nu) * ds;
  if (m.t_sign < 0 || m.u_sign < 0) return std::nullopt;
  Wide den = Wide(q.d) * det;
  Wide x = Wide(p.x) * den + nt * a.x;
  Wide y = Wide(p.y) * den + nt * a.y;
  den *= p.d;
  if (den < 0) {
    den = -den;
    x = -x;
    y = -y;
  }
  const Wide g = wide_gcd(wide_gcd(x, y), den);
  m.point = {narrow(x / g), narrow(y / g), narrow(den / g)};
  return m;
}

template <class F>
void for_each_submask(std::uint64_t mask, F&& f) {
  for (std::uint64_t sub = mask;; sub = (sub - 1) & mask) {
    f(sub);
    if (sub == 0) break;
  }
}

}  // namespace

FixedPoint FixedPoint::from(const RationalPoint& p) {
  const BigInt den = lcm(p.x.get_den(), p.y.get_den());
  const BigInt x = p.x.get_num() * (den / p.x.get_den());
  const BigInt y = p.y.get_num() * (den / p.y.get_den());
  if (!den.fits_slong_p() || !x.fits_slong_p() || !y.fits_slong_p()) {
    throw std::overflow_error("coordinate overflow in curve search");
  }
  return {x.get_si(), y.get_si(), den.get_si()};
}

RationalPoint FixedPoint::to_rational() const {
  Rational rx(static_cast<long>(x), static_cast<long>(d));
  Rational ry(static_cast<long>(y), static_cast<long>(d));
  rx.canonicalize();
  ry.canonicalize();
  return {rx, ry};
}

std::size_t CurveSearch::KeyHash::operator()(const Key& k) const {
  std::uint64_t h = k.marks * 0x9e3779b97f4a7c15ULL;
  h ^= (static_cast<std::uint64_t>(k.ends) << 20) ^ (static_cast<std::uint64_t>(k.pins) << 52);
  h ^= static_cast<std::uint64_t>(k.origin + 1) * 0xc2b2ae3d27d4eb4fULL;
  h ^= h >> 29;
  return static_cast<std::size_t>(h * 0xbf58476d1ce4e5b9ULL);
}

CurveSearch::CurveSearch(std::vector<RationalPoint> marks, std::vector<LatticeVector> directions,
                         std::vector<int> full_counts, const std::vector<LatticeVector>& admissible)
    : marks_(std::move(marks)), directions_(std::move(directions)), full_(std::move(full_counts)) {
  if (marks_.size() > 64) throw InvalidArgument("at most 64 marked points are supported");
  std::uint64_t total = 1;
  for (int c : full_) {
    stride_.push_back(static_cast<std::uint32_t>(total));
    total *= static_cast<std::uint64_t>(c + 1);
  }
  if (total > (1u << 24)) throw InvalidArgument("degree too large for the curve search");
  size_of_.resize(total);
  sum_of_.resize(total);
  for (std::uint32_t idx = 0; idx < total; ++idx) {
    int size = 0;
    LatticeVector s;
    for (std::size_t k = 0; k < full_.size(); ++k) {
      const auto c = static_cast<int>((idx / stride_[k]) % static_cast<std::uint32_t>(full_[k] + 1));
      size += c;
      s += static_cast<std::int64_t>(c) * directions_[k];
    }
    size_of_[idx] = size;
    sum_of_[idx] = s;
  }
  for (const auto& v : admissible) reach_ = std::max<std::int64_t>({reach_, std::llabs(v.x), std::llabs(v.y)});
  admissible_ = slope_table(admissible);
  for (const auto& p : marks_) fixed_marks_.push_back(FixedPoint::from(p));
}

CurveSearch::~CurveSearch() = default;

std::uint32_t CurveSearch::encode(std::span<const int> counts) const {
  std::uint32_t idx = 0;
  for (std::size_t k = 0; k < full_.size(); ++k) {
    if (counts[k] < 0 || counts[k] > full_[k]) throw InvalidArgument("end counts exceed the degree");
    idx += static_cast<std::uint32_t>(counts[k]) * stride_[k];
  }
  return idx;
}

LatticeVector CurveSearch::sum(std::uint32_t ends, std::uint32_t pins) const {
  LatticeVector s = sum_of_[ends];
  for (std::uint32_t p = pins; p; p &= p - 1) s -= pins_[static_cast<std::size_t>(std::countr_zero(p))].inward;
  return s;
}

std::vector<char> CurveSearch::slope_table(std::span<const LatticeVector> slopes) const {
  const auto side = static_cast<std::size_t>(2 * reach_ + 1);
  std::vector<char> table(side * side, 0);
  for (const auto& v : slopes) {
    if (v.x < -reach_ || v.x > reach_ || v.y < -reach_ || v.y > reach_) continue;
    table[static_cast<std::size_t>(v.y + reach_) * side + static_cast<std::size_t>(v.x + reach_)] = 1;
  }
  return table;
}

bool CurveSearch::cycle_fits(const LatticeVector& v, std::uint32_t pins) const {
  if (!(pins & 1u) || cycle_ok_.empty()) return true;
  if (v.x < -reach_ || v.x > reach_ || v.y < -reach_ || v.y > reach_) return false;
  const auto side = static_cast<std::size_t>(2 * reach_ + 1);
  return cycle_ok_[static_cast<std::size_t>(v.y + reach_) * side + static_cast<std::size_t>(v.x + reach_)] != 0;
}

bool CurveSearch::admissible(const LatticeVector& v) const {
  if (v.x < -reach_ || v.x > reach_ || v.y < -reach_ || v.y > reach_) return false;
  const auto side = static_cast<std::size_t>(2 * reach_ + 1);
  return admissible_[static_cast<std::size_t>(v.y + reach_) * side + static_cast<std::size_t>(v.x + reach_)] != 0;
}

const std::vector<std::vector<std::uint32_t>>& CurveSearch::subs_by_size(std::uint32_t ends) {
  auto it = subs_.find(ends);
  if (it != subs_.end()) return it->second;
  std::vector<std::vector<std::uint32_t>> out(static_cast<std::size_t>(size_of_[ends]) + 1);
  std::vector<int> top(full_.size()), cur(full_.size(), 0);
  for (std::size_t k = 0; k < full_.size(); ++k) {
    top[k] = static_cast<int>((ends / stride_[k]) % static_cast<std::uint32_t>(full_[k] + 1));
  }
  for (;;) {
    const std::uint32_t idx = encode(cur);
    out[static_cast<std::size_t>(size_of_[idx])].push_back(idx);
    std::size_t k = 0;
    while (k < cur.size() && cur[k] == top[k]) cur[k++] = 0;
    if (k == cur.size()) break;
    ++cur[k];
  }
  return subs_.emplace(ends, std::move(out)).first->second;
}

const CurveSearch::List& CurveSearch::rigid(std::uint64_t m, std::uint32_t e, std::uint32_t p) {
  auto& memo = p ? pin_memo_ : memo_;
  const Key key{m, e, p, -1};
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  List out;
  const LatticeVector s = sum(e, p);
  if (admissible(s) && cycle_fits(s, p)) {
    if (m == 0 && e == 0 && std::popcount(p) == 1) {
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::Pin;
      n->slope = s;
      n->index = std::countr_zero(p);
      n->point = fixed_marks_[pins_[static_cast<std::size_t>(n->index)].mark];
      out.push_back(std::move(n));
    } else {
      for (std::uint64_t rest = m; rest; rest &= rest - 1) {
        const auto q = static_cast<std::size_t>(std::countr_zero(rest));
        if ((p & 1u) && static_cast<std::int64_t>(q) < cycle_cut_) continue;
        for (const auto& tail : pointed_from_mark(q, m & ~(std::uint64_t{1} << q), e, p)) {
          auto n = std::make_shared<Node>();
          n->kind = Node::Kind::Mark;
          n->slope = s;
          n->point = fixed_marks_[q];
          n->index = static_cast<std::int64_t>(q);
          n->first = tail;
          n->multiplicity = tail->multiplicity;
          n->degenerate = tail->degenerate;
          out.push_back(std::move(n));
        }
      }
      // Two rigid pieces; the first holds the lowest mark (or the lowest pin).
      const std::uint64_t lead_m = m ? (m & (~m + 1)) : 0;
      const std::uint32_t lead_p = m ? 0 : (p & (~p + 1));
      const auto& subs = subs_by_size(e);
      for_each_submask(m, [&](std::uint64_t ma) {
        if (lead_m && !(ma & lead_m)) return;
        const auto k = static_cast<std::size_t>(std::popcount(ma));
        if (k >= subs.size()) return;
        for (std::uint32_t ea : subs[k]) {
          for_each_submask(p, [&](std::uint64_t pa64) {
            const auto pa = static_cast<std::uint32_t>(pa64);
            if (lead_p && !(pa & lead_p)) return;
            if (ma == 0 && ea == 0 && pa == 0) return;
            const std::uint64_t mb = m ^ ma;
            const std::uint32_t eb = e - ea, pb = p ^ pa;
            if (mb == 0 && eb == 0 && pb == 0) return;
            const LatticeVector sa = sum(ea, pa);
            const LatticeVector sb = s - sa;
            if (!admissible(sa) || !admissible(sb)) return;
            if (!cycle_fits(sa, pa) || !cycle_fits(sb, pb)) return;
            const std::int64_t det = tropenum::cross(sa, sb);
            if (det == 0) return;
            const List& la = rigid(ma, ea, pa);
            if (la.empty()) return;
            const List& lb = rigid(mb, eb, pb);
            for (const auto& a : la) {
              for (const auto& b : lb) {
                const auto tu = meet(a->point, -sa, b->point, -sb);
                if (!tu) continue;
                ++explored_;
                auto n = std::make_shared<Node>();
                n->kind = Node::Kind::Split;
                n->slope = s;
                n->point = tu->point;
                n->first = a;
                n->second = b;
                n->multiplicity = times(times(a->multiplicity, b->multiplicity), static_cast<std::uint64_t>(std::llabs(det)));
                n->degenerate = a->degenerate || b->degenerate || tu->t_sign == 0 || tu->u_sign == 0;
                out.push_back(std::move(n));
              }
            }
          });
        }
      });
    }
  }
  return memo.emplace(key, std::move(out)).first->second;
}

const CurveSearch::List& CurveSearch::pointed_from_mark(std::size_t q, std::uint64_t m, std::uint32_t e, std::uint32_t p) {
  auto& memo = p ? pin_memo_ : memo_;
  const Key key{m, e, p, static_cast<std::int64_t>(q)};
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  List out = pointed(fixed_marks_[q], m, e, p);
  return memo.emplace(key, std::move(out)).first->second;
}

CurveSearch::List CurveSearch::pointed(const FixedPoint& origin, std::uint64_t m, std::uint32_t e, std::uint32_t p) {
  const LatticeVector s = sum(e, p);
  List out;
  if (m == 0 && p == 0 && size_of_[e] == 1) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::End;
    n->slope = s;
    for (std::size_t k = 0; k < full_.size(); ++k) {
      if ((e / stride_[k]) % static_cast<std::uint32_t>(full_[k] + 1)) n->index = static_cast<std::int64_t>(k);
    }
    out.push_back(std::move(n));
    return out;
  }
  if (!admissible(s) || !cycle_fits(s, p)) return out;
  const auto& subs = subs_by_size(e);
  for_each_submask(m, [&](std::uint64_t mb) {
    const auto k = static_cast<std::size_t>(std::popcount(mb));
    for (std::uint32_t eb : subs[k]) {
      for_each_submask(p, [&](std::uint64_t pb64) {
        const auto pb = static_cast<std::uint32_t>(pb64);
        if (mb == 0 && eb == 0 && pb == 0) return;
        const LatticeVector sb = sum(eb, pb);
        const LatticeVector sa = s - sb;
        if (!admissible(sa) || !admissible(sb)) return;
        if (!cycle_fits(sb, pb) || !cycle_fits(sa, p ^ pb)) return;
        const std::int64_t det = tropenum::cross(s, sb);
        if (det == 0) return;
        const List& branch = rigid(mb, eb, pb);
        for (const auto& r : branch) {
          const auto tu = meet(origin, s, r->point, -sb);
          if (!tu) continue;
          ++explored_;
          const FixedPoint x = tu->point;
          const bool boundary = tu->t_sign == 0 || tu->u_sign == 0;
          for (const auto& rest : pointed(x, m ^ mb, e - eb, p ^ pb)) {
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Junction;
            n->slope = s;
            n->point = x;
            n->first = r;
            n->second = rest;
            n->multiplicity = times(times(r->multiplicity, rest->multiplicity), static_cast<std::uint64_t>(std::llabs(det)));
            n->degenerate = boundary || r->degenerate || rest->degenerate;
            out.push_back(std::move(n));
          }
        }
      });
    }
  });
  return out;
}

namespace {

class SketchBuilder {
 public:
  SketchBuilder(const std::vector<RationalPoint>& marks, const std::vector<Pin>& pins) : marks_(marks), pins_(pins) {}

  std::size_t mark(std::size_t q) {
    auto it = mark_vertex_.find(q);
    if (it != mark_vertex_.end()) return it->second;
    const std::size_t v = vertex(marks_[q]);
    sketch.legs.push_back({v, {0, 0}, static_cast<std::int64_t>(q)});
    mark_vertex_.emplace(q, v);
    return v;
  }

  void pointed(const CurveSearch::Node& n, std::size_t from) {
    using Kind = CurveSearch::Node::Kind;
    if (n.kind == Kind::End) {
      sketch.legs.push_back({from, n.slope, -1});
      return;
    }
    const std::size_t w = vertex(n.point.to_rational());
    edge(from, w, n.slope);
    rigid(*n.first, w);
    pointed(*n.second, w);
  }

  void rigid(const CurveSearch::Node& n, std::size_t from) {
    using Kind = CurveSearch::Node::Kind;
    switch (n.kind) {
      case Kind::Mark: {
        const std::size_t v = mark(static_cast<std::size_t>(n.index));
        edge(from, v, n.slope);
        pointed(*n.first, v);
        break;
      }
      case Kind::Pin:
        edge(from, mark(pins_[static_cast<std::size_t>(n.index)].mark), n.slope);
        break;
      case Kind::Split: {
        const std::size_t y = vertex(n.point.to_rational());
        edge(from, y, n.slope);
        rigid(*n.first, y);
        rigid(*n.second, y);
        break;
      }
      default:
        throw std::logic_error("unexpected node in rigid piece");
    }
  }

  CurveSketch sketch;

 private:
  std::size_t vertex(const RationalPoint& p) {
    sketch.positions.push_back(p);
    return sketch.positions.size() - 1;
  }
  void edge(std::size_t a, std::size_t b, const LatticeVector& s) {
    sketch.edges.push_back({a, b});
    sketch.slopes.push_back(s);
  }

  const std::vector<RationalPoint>& marks_;
  const std::vector<Pin>& pins_;
  std::map<std::size_t, std::size_t> mark_vertex_;
};

}  // namespace

std::vector<CurveSketch> CurveSearch::connected(std::uint64_t marks, std::span<const int> counts,
                                                std::span<const Pin> pins) {
  if (pins.size() > 16) throw InvalidArgument("too many pins");
  pins_.assign(pins.begin(), pins.end());
  pin_memo_.clear();
  cycle_cut_ = -1;
  std::uint64_t normal = marks;
  for (const auto& pin : pins_) normal &= ~(std::uint64_t{1} << pin.mark);
  std::vector<CurveSketch> out;
  if (normal == 0) return out;
  const std::uint32_t e = encode(counts);
  const auto root = static_cast<std::size_t>(std::countr_zero(normal));
  const std::uint64_t rest = normal & ~(std::uint64_t{1} << root);
  const std::uint32_t all_pins = pins_.empty() ? 0 : static_cast<std::uint32_t>((1u << pins_.size()) - 1);
  if (!sum(e, all_pins).is_zero()) throw InvalidArgument("unbalanced piece");
  const auto& subs = subs_by_size(e);
  for_each_submask(rest, [&](std::uint64_t ma) {
    const auto k = static_cast<std::size_t>(std::popcount(ma)) + 1;
    if (k >= subs.size()) return;
    for (std::uint32_t ea : subs[k]) {
      for_each_submask(all_pins, [&](std::uint64_t pa64) {
        const auto pa = static_cast<std::uint32_t>(pa64);
        const LatticeVector sa = sum(ea, pa);
        if (!positive_half(sa) || !admissible(sa)) return;
        const List& la = pointed_from_mark(root, ma, ea, pa);
        if (la.empty()) return;
        const List& lb = pointed_from_mark(root, rest ^ ma, e - ea, all_pins ^ pa);
        for (const auto& a : la) {
          for (const auto& b : lb) {
            if (a->degenerate || b->degenerate) {
              throw DegenerateConfiguration("curve through the points has a zero-length edge");
            }
            SketchBuilder builder(marks_, pins_);
            const std::size_t v = builder.mark(root);
            builder.pointed(*a, v);
            builder.pointed(*b, v);
            builder.sketch.multiplicity = times(a->multiplicity, b->multiplicity);
            out.push_back(std::move(builder.sketch));
          }
        }
      });
    }
  });
  pin_memo_.clear();
  return out;
}

std::vector<std::vector<CurveSketch>> CurveSearch::through_cut(std::span<const std::uint64_t> mark_sets,
                                                               std::span<const int> counts, std::size_t cut,
                                                               const LatticeVector& u, std::span<const Pin> pins,
                                                               bool lowest_cut,
                                                               std::span<const LatticeVector> cycle_slopes) {
  if (pins.size() > 15) throw InvalidArgument("too many pins");
  cycle_ok_ = cycle_slopes.empty() ? std::vector<char>{} : slope_table(cycle_slopes);
  pins_.assign(1, Pin{cut, -u});
  pins_.insert(pins_.end(), pins.begin(), pins.end());
  pin_memo_.clear();
  cycle_cut_ = lowest_cut ? static_cast<std::int64_t>(cut) : -1;
  const std::uint64_t cut_bit = std::uint64_t{1} << cut;
  const std::uint32_t e = encode(counts);
  const auto all_pins = static_cast<std::uint32_t>((1u << pins_.size()) - 1);
  if (sum(e, all_pins) != u) throw InvalidArgument("unbalanced piece");
  std::vector<std::vector<CurveSketch>> out(mark_sets.size());
  for (std::size_t i = 0; i < mark_sets.size(); ++i) {
    if (!(mark_sets[i] & cut_bit)) continue;
    std::uint64_t rest = mark_sets[i] & ~cut_bit;
    for (const auto& pin : pins) rest &= ~(std::uint64_t{1} << pin.mark);
    for (const auto& a : pointed_from_mark(cut, rest, e, all_pins)) {
      if (a->degenerate) throw DegenerateConfiguration("curve through the points has a zero-length edge");
      SketchBuilder builder(marks_, pins_);
      builder.pointed(*a, builder.mark(cut));
      builder.sketch.multiplicity = a->multiplicity;
      out[i].push_back(std::move(builder.sketch));
    }
  }
  pin_memo_.clear();
  cycle_cut_ = -1;
  cycle_ok_.clear();
  return out;
}

std::string CurveSketch::signature() const {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::string a = to_string(positions[edges[i].tail]);
    std::string b = to_string(positions[edges[i].head]);
    if (b < a) std::swap(a, b);
    parts.push_back("e" + a + b);
  }
  for (const auto& l : legs) {
    parts.push_back("l" + to_string(positions[l.anchor]) + to_string(l.slope) + std::to_string(l.mark));
  }
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) out += p + ";";
  return out;
}

ParamTropicalCurve assemble(std::span<const CurveSketch* const> pieces) {
  std::vector<RationalPoint> positions;
  std::vector<GraphEdge> edges;
  std::vector<LatticeVector> slopes;
  std::vector<CurveSketch::Leg> legs;
  for (const auto* piece : pieces) {
    const std::size_t offset = positions.size();
    positions.insert(positions.end(), piece->positions.begin(), piece->positions.end());
    for (const auto& e : piece->edges) edges.push_back({e.tail + offset, e.head + offset});
    slopes.insert(slopes.end(), piece->slopes.begin(), piece->slopes.end());
    for (auto l : piece->legs) {
      l.anchor += offset;
      legs.push_back(l);
    }
  }
  std::stable_sort(legs.begin(), legs.end(), [&](const auto& a, const auto& b) {
    const bool ca = a.mark >= 0, cb = b.mark >= 0;
    if (ca != cb) return ca;
    if (ca) return a.mark < b.mark;
    if (a.slope != b.slope) return a.slope < b.slope;
    return positions[a.anchor] < positions[b.anchor];
  });
  std::vector<std::size_t> anchors;
  std::vector<LatticeVector> leg_slopes;
  for (const auto& l : legs) {
    anchors.push_back(l.anchor);
    leg_slopes.push_back(l.slope);
  }
  ParamTropicalCurve curve;
  const std::size_t n = positions.size();
  curve.type = CombinatorialType(Graph(n, edges, std::move(anchors)), std::vector<int>(n, 0), slopes, std::move(leg_slopes));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const RationalPoint d = positions[edges[i].head] - positions[edges[i].tail];
    curve.lengths.push_back(slopes[i].x != 0 ? Rational(d.x / static_cast<long>(slopes[i].x))
                                             : Rational(d.y / static_cast<long>(slopes[i].y)));
  }
  curve.positions = std::move(positions);
  curve.validate();
  return curve;
}

}  // namespace tropenum::detail
