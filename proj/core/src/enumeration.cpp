#include "tropenum/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <exception>
#include <map>
#include <memory>
#include <json.hpp>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <unordered_set>

#include "curve_search.hpp"
#include "tropenum/errors.hpp"
#include "tropenum/serialization.hpp"

namespace tropenum {

namespace {

bool positive_half(const LatticeVector& v) { return v.x > 0 || (v.x == 0 && v.y > 0); }

unsigned worker_count(unsigned requested) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TROPENUM_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0) n = std::min(n, static_cast<unsigned>(cap));
  }
  return std::max(1u, n);
}

// Runs f(0..n-1) on up to `workers` threads. The exception of the lowest failing index is
// rethrown, so failures do not depend on scheduling.
template <class F>
void parallel_for(std::size_t n, unsigned workers, F&& f) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned extra = static_cast<unsigned>(std::min<std::size_t>(workers, n)) - (n ? 1 : 0);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < extra; ++t) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<std::size_t> bit_list(std::uint64_t mask) {
  std::vector<std::size_t> out;
  for (; mask; mask &= mask - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
  return out;
}

// Upper bound for the genus of a curve with these ends: interior points of the dual polygon.
std::int64_t genus_bound(const std::vector<LatticeVector>& directions, std::span<const int> counts) {
  std::vector<LatticeVector> entries;
  for (std::size_t k = 0; k < directions.size(); ++k) {
    for (int i = 0; i < counts[k]; ++i) entries.push_back(directions[k]);
  }
  try {
    return interior_points(LatticePolygon::from_degree(TropicalDegree(std::move(entries)))).count;
  } catch (const InvalidPolygon&) {
    return 0;
  }
}

// Slopes an edge of a cycle can have: one side of it is a bounded region of the complement,
// dual to an interior lattice point p0 of the piece's polygon, so the slope is the rotation of
// p - p0 for another lattice point p.
std::vector<LatticeVector> cycle_slopes(const std::vector<LatticeVector>& directions, std::span<const int> counts) {
  std::vector<LatticeVector> entries;
  for (std::size_t k = 0; k < directions.size(); ++k) {
    for (int i = 0; i < counts[k]; ++i) entries.push_back(directions[k]);
  }
  const LatticePolygon poly = LatticePolygon::from_degree(TropicalDegree(std::move(entries)));
  const auto inner = interior_points(poly).points;
  auto all = boundary_points(poly).points;
  all.insert(all.end(), inner.begin(), inner.end());
  std::set<LatticeVector> out;
  for (const auto& p0 : inner) {
    for (const auto& p : all) {
      if (p == p0) continue;
      out.insert(rotate_ccw(p - p0));
      out.insert(rotate_ccw(p0 - p));
    }
  }
  return {out.begin(), out.end()};
}

BigInt factorial(long n) {
  BigInt f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

struct Certified {
  ParamTropicalCurve curve;
  std::string canonical;
  BigInt multiplicity;
  BigInt automorphisms;
  std::size_t components = 1;
};

class Counter {
 public:
  Counter(const CountRequest& req, const PointConfiguration& config)
      : req_(req), config_(config), admissible_(admissible_slopes(req.polygon)) {
    for (const auto& [dir, count] : dual_degree(req.polygon).grouped()) {
      directions_.push_back(dir);
      full_.push_back(count);
    }
    for (const auto& v : admissible_) {
      if (positive_half(v)) half_.push_back(v);
    }
    search_ = std::make_unique<detail::CurveSearch>(config.points, directions_, full_, admissible_);
  }

  std::vector<std::vector<const detail::CurveSketch*>> curves() {
    const std::size_t r = config_.points.size();
    const std::uint64_t all = r == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1;
    std::vector<std::vector<const detail::CurveSketch*>> out;
    if (req_.irreducible_only) {
      for (const auto& c : piece(all, full_, req_.genus)) out.push_back({&c});
      return out;
    }
    std::vector<const std::vector<detail::CurveSketch>*> chosen;
    // A dry run collects the positive-genus pieces, which are then searched together.
    dry_run_ = true;
    split(all, full_, 0, 0, chosen, out);
    dry_run_ = false;
    search_pending();
    split(all, full_, 0, 0, chosen, out);
    return out;
  }

  std::uint64_t explored() const { return search_->explored(); }

 private:
  using PieceKey = std::tuple<std::uint64_t, std::vector<int>, std::int64_t>;

  const std::vector<detail::CurveSketch>& piece(std::uint64_t marks, const std::vector<int>& counts, std::int64_t genus) {
    PieceKey key{marks, counts, genus};
    if (auto it = pieces_.find(key); it != pieces_.end()) return it->second;
    if (genus > genus_bound(directions_, counts)) return pieces_.emplace(std::move(key), std::vector<detail::CurveSketch>{}).first->second;
    if (genus == 0) return pieces_.emplace(std::move(key), search_->connected(marks, counts, {})).first->second;
    if (dry_run_) {
      pending_.insert(std::move(key));
      return placeholder_;
    }
    pending_.insert(key);
    search_pending();
    return pieces_.at(key);
  }

  // Genus is handled by cutting one mark per independent cycle. The search is rooted at the
  // first cut; further cuts become pin pairs with guessed directions. In genus one the
  // first cut is the lowest mark on the cycle, so each curve is found once; otherwise the
  // same curve can appear under several cut choices and is kept once.
  void search_pending() {
    std::map<std::pair<std::vector<int>, std::int64_t>, std::vector<std::uint64_t>> groups;
    for (const auto& [marks, counts, genus] : pending_) groups[{counts, genus}].push_back(marks);
    pending_.clear();
    for (const auto& [shape, sets] : groups) {
      const auto& [counts, genus] = shape;
      std::vector<std::map<std::string, detail::CurveSketch>> unique(sets.size());
      std::uint64_t any = 0;
      for (auto m : sets) any |= m;
      const auto ids = bit_list(any);
      const auto g = static_cast<std::size_t>(genus);
      if (ids.size() >= g + 1 && !half_.empty()) search_cuts(sets, counts, ids, g, unique);
      for (std::size_t i = 0; i < sets.size(); ++i) {
        std::vector<detail::CurveSketch> found;
        for (auto& [sig, sketch] : unique[i]) found.push_back(std::move(sketch));
        pieces_[PieceKey{sets[i], counts, genus}] = std::move(found);
      }
    }
  }

  void search_cuts(const std::vector<std::uint64_t>& sets, const std::vector<int>& counts,
                   const std::vector<std::size_t>& ids, std::size_t g,
                   std::vector<std::map<std::string, detail::CurveSketch>>& unique) {
    std::vector<std::size_t> pick(g);
    for (std::size_t j = 0; j < g; ++j) pick[j] = j;
    for (;;) {
      std::uint64_t cut_bits = 0;
      for (std::size_t j = 0; j < g; ++j) cut_bits |= std::uint64_t{1} << ids[pick[j]];
      std::vector<std::uint64_t> eligible;
      std::vector<std::size_t> where;
      for (std::size_t i = 0; i < sets.size(); ++i) {
        if ((sets[i] & cut_bits) == cut_bits && static_cast<std::size_t>(std::popcount(sets[i])) > g) {
          eligible.push_back(sets[i]);
          where.push_back(i);
        }
      }
      std::vector<std::size_t> dir(g, 0);
      const auto cycle = cycle_slopes(directions_, counts);
      std::vector<LatticeVector> first;
      for (const auto& v : cycle) {
        if (positive_half(v)) first.push_back(v);
      }
      while (!eligible.empty() && !first.empty()) {
        std::vector<detail::Pin> pins;
        for (std::size_t j = 1; j < g; ++j) {
          pins.push_back({ids[pick[j]], half_[dir[j]]});
          pins.push_back({ids[pick[j]], -half_[dir[j]]});
        }
        auto found = search_->through_cut(eligible, counts, ids[pick[0]], first[dir[0]], pins, g == 1, cycle);
        for (std::size_t k = 0; k < found.size(); ++k) {
          for (auto& s : found[k]) unique[where[k]].emplace(s.signature(), std::move(s));
        }
        std::size_t j = 0;
        while (j < g && dir[j] + 1 == (j == 0 ? first.size() : half_.size())) dir[j++] = 0;
        if (j == g) break;
        ++dir[j];
      }
      std::size_t j = g;
      while (j > 0 && pick[j - 1] == ids.size() - g + (j - 1)) --j;
      if (j == 0) break;
      ++pick[j - 1];
      for (std::size_t k = j; k < g; ++k) pick[k] = pick[k - 1] + 1;
    }
  }

  // Each piece takes the lowest remaining mark; genera combine as g = sum g_i - (c - 1).
  void split(std::uint64_t rest, const std::vector<int>& left, std::size_t components, std::int64_t genus_sum,
             std::vector<const std::vector<detail::CurveSketch>*>& chosen,
             std::vector<std::vector<const detail::CurveSketch*>>& out) {
    const bool no_ends = std::all_of(left.begin(), left.end(), [](int c) { return c == 0; });
    if (rest == 0 || no_ends) {
      if (!dry_run_ && rest == 0 && no_ends && genus_sum - static_cast<std::int64_t>(components - 1) == req_.genus) {
        emit_products(chosen, 0, {}, out);
      }
      return;
    }
    const std::uint64_t low = rest & (~rest + 1);
    const std::uint64_t others = rest ^ low;
    for (std::uint64_t sub = others;; sub = (sub - 1) & others) {
      const std::uint64_t mi = sub | low;
      std::vector<int> ei(left.size(), 0);
      for (;;) {
        std::size_t k = 0;
        while (k < ei.size() && ei[k] == left[k]) ei[k++] = 0;
        if (k == ei.size()) break;
        ++ei[k];
        LatticeVector s;
        int size = 0;
        for (std::size_t i = 0; i < ei.size(); ++i) {
          s += static_cast<std::int64_t>(ei[i]) * directions_[i];
          size += ei[i];
        }
        if (!s.is_zero()) continue;
        const std::int64_t gi = std::popcount(mi) - size + 1;
        if (gi < 0) continue;
        const auto& list = piece(mi, ei, gi);
        if (list.empty()) continue;
        std::vector<int> remaining(left);
        for (std::size_t i = 0; i < ei.size(); ++i) remaining[i] -= ei[i];
        chosen.push_back(&list);
        split(rest ^ mi, remaining, components + 1, genus_sum + gi, chosen, out);
        chosen.pop_back();
      }
      if (sub == 0) break;
    }
  }

  static void emit_products(const std::vector<const std::vector<detail::CurveSketch>*>& chosen, std::size_t i,
                            std::vector<const detail::CurveSketch*> prefix,
                            std::vector<std::vector<const detail::CurveSketch*>>& out) {
    if (i == chosen.size()) {
      out.push_back(std::move(prefix));
      return;
    }
    for (const auto& c : *chosen[i]) {
      auto next = prefix;
      next.push_back(&c);
      emit_products(chosen, i + 1, std::move(next), out);
    }
  }

  const CountRequest& req_;
  const PointConfiguration& config_;
  std::vector<LatticeVector> admissible_;
  std::vector<LatticeVector> half_;
  std::vector<LatticeVector> directions_;
  std::vector<int> full_;
  std::unique_ptr<detail::CurveSearch> search_;
  std::map<PieceKey, std::vector<detail::CurveSketch>> pieces_;
  std::set<PieceKey> pending_;
  bool dry_run_ = false;
  const std::vector<detail::CurveSketch> placeholder_{detail::CurveSketch{}};
};

Certified certify(const std::vector<const detail::CurveSketch*>& pieces, const PointConfiguration& config) {
  Certified c;
  c.curve = detail::assemble(pieces);
  const CombinatorialType& type = c.curve.type;
  const Graph& g = type.graph();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (g.valence(v) != 3 || type.weights()[v] != 0) throw std::logic_error("counted curve is not weightless trivalent");
  }
  for (const auto& s : type.edge_slopes()) {
    if (s.is_zero()) throw std::logic_error("counted curve contracts an edge");
  }
  const auto solutions = solve_through_points(type, config);
  if (solutions.size() != 1 || solutions.front().positions != c.curve.positions ||
      solutions.front().lengths != c.curve.lengths) {
    throw std::logic_error("curve found by the search does not re-solve uniquely from its type");
  }
  c.multiplicity = mikhalkin_multiplicity(type);
  std::uint64_t expected = 1;
  for (const auto* p : pieces) expected *= p->multiplicity;
  if (c.multiplicity != BigInt(std::to_string(expected))) {
    throw std::logic_error("search multiplicity disagrees with the Mikhalkin multiplicity");
  }
  c.automorphisms = automorphism_count(type);
  c.canonical = canonical_form(type, LegLabeling::UnorderedEnds);
  c.components = g.component_count();
  return c;
}

CountReport count_once(const CountRequest& req, const PointConfiguration& config) {
  Counter counter(req, config);
  const auto curves = counter.curves();
  std::vector<Certified> certified(curves.size());
  parallel_for(curves.size(), worker_count(req.threads),
               [&](std::size_t i) { certified[i] = certify(curves[i], config); });

  CountReport report;
  report.configuration = config;
  report.genus = req.genus;
  report.irreducible_only = req.irreducible_only;
  report.explored = counter.explored();
  std::map<std::string, TypeCount> by_type;
  Rational total = 0;
  for (auto& c : certified) {
    auto [it, fresh] = by_type.try_emplace(c.canonical);
    TypeCount& t = it->second;
    if (fresh) {
      t.canonical = c.canonical;
      t.type_id = type_id(c.canonical);
      t.multiplicity = c.multiplicity;
      t.components = c.components;
      t.curve = std::move(c.curve);
    }
    ++t.solutions;
    total += Rational(c.multiplicity) / Rational(c.automorphisms);
  }
  if (total.get_den() != 1) throw std::logic_error("weighted count is not an integer");
  report.total = total.get_num();
  if (req.divide_unordered_legs) {
    report.convention = "one ordering of equal-slope ends per orbit";
  } else {
    for (const auto& [dir, k] : dual_degree(req.polygon).grouped()) report.total *= factorial(k);
    report.convention = "ordered ends (multiplied by prod k_i!)";
  }
  for (auto& [key, t] : by_type) report.per_type.push_back(std::move(t));
  return report;
}

}  // namespace

CountReport count_curves(const CountRequest& req) {
  const std::int64_t r = boundary_points(req.polygon).count + req.genus - 1;
  if (r < 0) throw InvalidArgument("no curves: |boundary| + g - 1 is negative");
  if (r > 64) throw InvalidArgument("too many point conditions");
  if (req.max_attempts < 1) throw InvalidArgument("max_attempts must be positive");
  for (int attempt = 0; attempt < req.max_attempts; ++attempt) {
    const auto config = sample_configuration(static_cast<std::size_t>(r), req.seed, attempt);
    try {
      CountReport report = count_once(req, config);
      report.resample_attempts = attempt;
      return report;
    } catch (const DegenerateConfiguration&) {
    }
  }
  throw GenericityExhausted("no generic point configuration found after " + std::to_string(req.max_attempts) +
                            " attempts");
}

std::string report_to_json(const CountReport& report, int indent) {
  using nlohmann::ordered_json;
  auto big = [](const BigInt& v) -> ordered_json {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
  };
  ordered_json j;
  j["total"] = big(report.total);
  j["genus"] = report.genus;
  j["irreducible_only"] = report.irreducible_only;
  j["convention"] = report.convention;
  j["resample_attempts"] = report.resample_attempts;
  ordered_json points = ordered_json::array();
  for (const auto& p : report.configuration.points) points.push_back({fraction_string(p.x), fraction_string(p.y)});
  j["configuration"] = {{"seed", report.configuration.seed}, {"attempt", report.configuration.attempt}, {"points", points}};
  ordered_json types = ordered_json::array();
  for (const auto& t : report.per_type) {
    ordered_json e;
    e["type_id"] = t.type_id;
    e["multiplicity"] = big(t.multiplicity);
    e["solutions"] = t.solutions;
    e["components"] = t.components;
    e["curve"] = ordered_json::parse(to_json(t.curve));
    types.push_back(std::move(e));
  }
  j["per_type"] = std::move(types);
  return j.dump(indent);
}

// ---------------------------------------------------------------------------
// Type generation

namespace {

struct RawType {
  std::size_t vertices = 0;
  std::vector<GraphEdge> edges;
  std::vector<LatticeVector> slopes;
  std::vector<std::size_t> leg_anchor;
  std::vector<LatticeVector> leg_slope;
  std::vector<int> leg_tag;  // mark id for contracted legs, -1 for ends, < -1 for glue legs

  std::size_t add_vertex() { return vertices++; }
  void add_leg(std::size_t v, const LatticeVector& s, int tag) {
    leg_anchor.push_back(v);
    leg_slope.push_back(s);
    leg_tag.push_back(tag);
  }

  // Contracted legs first, by mark id, then ends.
  CombinatorialType to_type() const {
    std::vector<std::size_t> order(leg_tag.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const bool ma = leg_tag[a] >= 0, mb = leg_tag[b] >= 0;
      if (ma != mb) return ma;
      return ma && leg_tag[a] < leg_tag[b];
    });
    std::vector<std::size_t> anchors;
    std::vector<LatticeVector> ls;
    for (auto i : order) {
      anchors.push_back(leg_anchor[i]);
      ls.push_back(leg_slope[i]);
    }
    return CombinatorialType(Graph(vertices, edges, std::move(anchors)), std::vector<int>(vertices, 0), slopes,
                             std::move(ls));
  }
};

struct Tree;
using TreePtr = std::shared_ptr<const Tree>;
struct Tree {
  int leaf = -1;  // leaf class, or -1 for an inner vertex
  LatticeVector slope;
  TreePtr a, b;
};

// Rooted trivalent trees over a multiset of leaf classes, memoized by sub-multiset.
class TreeGenerator {
 public:
  TreeGenerator(std::vector<LatticeVector> slopes, std::vector<int> counts, const std::vector<LatticeVector>& admissible)
      : slopes_(std::move(slopes)), full_(std::move(counts)) {
    std::uint32_t total = 1;
    for (int c : full_) {
      stride_.push_back(total);
      total *= static_cast<std::uint32_t>(c + 1);
    }
    for (const auto& v : admissible) admissible_.insert(v);
  }

  std::uint32_t full_index() const {
    std::uint32_t idx = 0;
    for (std::size_t k = 0; k < full_.size(); ++k) idx += static_cast<std::uint32_t>(full_[k]) * stride_[k];
    return idx;
  }
  std::uint32_t unit(std::size_t k) const { return stride_[k]; }
  int count(std::uint32_t idx, std::size_t k) const {
    return static_cast<int>((idx / stride_[k]) % static_cast<std::uint32_t>(full_[k] + 1));
  }
  int size(std::uint32_t idx) const {
    int s = 0;
    for (std::size_t k = 0; k < full_.size(); ++k) s += count(idx, k);
    return s;
  }
  LatticeVector sum(std::uint32_t idx) const {
    LatticeVector s;
    for (std::size_t k = 0; k < full_.size(); ++k) s += static_cast<std::int64_t>(count(idx, k)) * slopes_[k];
    return s;
  }
  bool admissible(const LatticeVector& v) const { return !v.is_zero() && admissible_.count(v) > 0; }

  // Sub-multisets of idx in increasing index order.
  std::vector<std::uint32_t> subs(std::uint32_t idx) const {
    std::vector<std::uint32_t> out;
    std::vector<int> top(full_.size()), cur(full_.size(), 0);
    for (std::size_t k = 0; k < full_.size(); ++k) top[k] = count(idx, k);
    for (;;) {
      std::uint32_t i = 0;
      for (std::size_t k = 0; k < full_.size(); ++k) i += static_cast<std::uint32_t>(cur[k]) * stride_[k];
      out.push_back(i);
      std::size_t k = 0;
      while (k < cur.size() && cur[k] == top[k]) cur[k++] = 0;
      if (k == cur.size()) break;
      ++cur[k];
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  const std::vector<TreePtr>& rooted(std::uint32_t idx) {
    if (auto it = memo_.find(idx); it != memo_.end()) return it->second;
    std::vector<TreePtr> out;
    const LatticeVector s = sum(idx);
    if (size(idx) == 1) {
      auto t = std::make_shared<Tree>();
      for (std::size_t k = 0; k < full_.size(); ++k) {
        if (count(idx, k)) t->leaf = static_cast<int>(k);
      }
      t->slope = s;
      out.push_back(std::move(t));
    } else if (admissible(s)) {
      out = pairs(idx, s);
    }
    return memo_.emplace(idx, std::move(out)).first->second;
  }

  // Unordered pairs of rooted trees splitting idx, joined at a new vertex.
  std::vector<TreePtr> pairs(std::uint32_t idx, const LatticeVector& s) {
    std::vector<TreePtr> out;
    for (std::uint32_t a : subs(idx)) {
      const std::uint32_t b = idx - a;
      if (a == 0 || b == 0 || a > b) continue;
      const LatticeVector sa = sum(a);
      if (sa.is_zero() || (s - sa).is_zero()) continue;
      const auto& la = rooted(a);
      const auto& lb = rooted(b);
      for (std::size_t i = 0; i < la.size(); ++i) {
        for (std::size_t j = (a == b ? i : 0); j < lb.size(); ++j) {
          auto t = std::make_shared<Tree>();
          t->slope = s;
          t->a = la[i];
          t->b = lb[j];
          out.push_back(std::move(t));
        }
      }
    }
    return out;
  }

 private:
  std::vector<LatticeVector> slopes_;
  std::vector<int> full_;
  std::vector<std::uint32_t> stride_;
  std::set<LatticeVector> admissible_;
  std::map<std::uint32_t, std::vector<TreePtr>> memo_;
};

void hang(const Tree& t, std::size_t parent, RawType& raw, const std::vector<int>& tags) {
  if (t.leaf >= 0) {
    raw.add_leg(parent, t.slope, tags[static_cast<std::size_t>(t.leaf)]);
    return;
  }
  const std::size_t v = raw.add_vertex();
  raw.edges.push_back({parent, v});
  raw.slopes.push_back(t.slope);
  hang(*t.a, v, raw, tags);
  hang(*t.b, v, raw, tags);
}

// Connected unmarked types: trees over the ends plus g glue pairs (s, -s), glued into edges.
// A two-ended degree gives a single 2-valent vertex, which only becomes valid once a mark
// is placed on it.
void connected_bases(const std::vector<LatticeVector>& dirs, const std::vector<int>& counts, std::int64_t genus,
                     const std::vector<LatticeVector>& admissible, const std::function<void(RawType)>& emit) {
  std::vector<LatticeVector> half;
  for (const auto& v : admissible) {
    if (positive_half(v)) half.push_back(v);
  }
  const auto g = static_cast<std::size_t>(genus);
  int ends = 0;
  for (int c : counts) ends += c;
  if (g == 0 && ends == 2) {
    RawType raw;
    const std::size_t v = raw.add_vertex();
    for (std::size_t k = 0; k < dirs.size(); ++k) {
      for (int i = 0; i < counts[k]; ++i) raw.add_leg(v, dirs[k], -1);
    }
    emit(std::move(raw));
    return;
  }
  if (g > 0 && half.empty()) return;
  std::vector<std::size_t> glue(g, 0);
  for (;;) {
    std::vector<LatticeVector> slopes = dirs;
    std::vector<int> full = counts;
    std::vector<int> tags(dirs.size(), -1);
    for (std::size_t j = 0; j < g; ++j) {
      slopes.push_back(half[glue[j]]);
      slopes.push_back(-half[glue[j]]);
      full.push_back(1);
      full.push_back(1);
      tags.push_back(-2 - static_cast<int>(2 * j));
      tags.push_back(-3 - static_cast<int>(2 * j));
    }
    TreeGenerator gen(slopes, full, admissible);
    std::size_t first = 0;
    while (first < full.size() && full[first] == 0) ++first;
    if (first < full.size()) {
      const std::uint32_t rest = gen.full_index() - gen.unit(first);
      const LatticeVector root = slopes[first];
      for (const auto& pair : gen.pairs(rest, -root)) {
        RawType raw;
        const std::size_t v = raw.add_vertex();
        raw.add_leg(v, root, tags[first]);
        hang(*pair->a, v, raw, tags);
        hang(*pair->b, v, raw, tags);
        // Glue leg pairs.
        bool ok = true;
        for (std::size_t j = 0; j < g && ok; ++j) {
          const int pos = -2 - static_cast<int>(2 * j), neg = pos - 1;
          const auto ip = static_cast<std::size_t>(std::find(raw.leg_tag.begin(), raw.leg_tag.end(), pos) - raw.leg_tag.begin());
          const auto in = static_cast<std::size_t>(std::find(raw.leg_tag.begin(), raw.leg_tag.end(), neg) - raw.leg_tag.begin());
          if (raw.leg_anchor[ip] == raw.leg_anchor[in]) {
            ok = false;
            break;
          }
          raw.edges.push_back({raw.leg_anchor[ip], raw.leg_anchor[in]});
          raw.slopes.push_back(raw.leg_slope[ip]);
          for (auto i : {std::max(ip, in), std::min(ip, in)}) {
            raw.leg_anchor.erase(raw.leg_anchor.begin() + static_cast<std::ptrdiff_t>(i));
            raw.leg_slope.erase(raw.leg_slope.begin() + static_cast<std::ptrdiff_t>(i));
            raw.leg_tag.erase(raw.leg_tag.begin() + static_cast<std::ptrdiff_t>(i));
          }
        }
        if (ok) emit(std::move(raw));
      }
    }
    // Next non-decreasing glue tuple.
    std::size_t j = g;
    while (j > 0 && glue[j - 1] + 1 == half.size()) --j;
    if (j == 0) break;
    ++glue[j - 1];
    for (std::size_t k = j; k < g; ++k) glue[k] = glue[j - 1];
  }
}

RawType disjoint_union(const std::vector<const RawType*>& parts) {
  RawType out;
  for (const auto* p : parts) {
    const std::size_t off = out.vertices;
    out.vertices += p->vertices;
    for (const auto& e : p->edges) out.edges.push_back({e.tail + off, e.head + off});
    out.slopes.insert(out.slopes.end(), p->slopes.begin(), p->slopes.end());
    for (std::size_t i = 0; i < p->leg_anchor.size(); ++i) out.add_leg(p->leg_anchor[i] + off, p->leg_slope[i], p->leg_tag[i]);
  }
  return out;
}

void insert_marks(const RawType& t, int mark, int r, const std::function<void(const RawType&)>& emit) {
  if (mark == r) {
    emit(t);
    return;
  }
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    RawType n = t;
    const std::size_t w = n.add_vertex();
    const std::size_t head = n.edges[e].head;
    n.edges[e].head = w;
    n.edges.push_back({w, head});
    n.slopes.push_back(n.slopes[e]);
    n.add_leg(w, {0, 0}, mark);
    insert_marks(n, mark + 1, r, emit);
  }
  for (std::size_t l = 0; l < t.leg_tag.size(); ++l) {
    if (t.leg_tag[l] >= 0) continue;
    RawType n = t;
    const std::size_t w = n.add_vertex();
    n.edges.push_back({n.leg_anchor[l], w});
    n.slopes.push_back(n.leg_slope[l]);
    n.leg_anchor[l] = w;
    n.add_leg(w, {0, 0}, mark);
    insert_marks(n, mark + 1, r, emit);
  }
  std::vector<std::size_t> valence(t.vertices, 0);
  std::vector<bool> marked(t.vertices, false);
  for (const auto& e : t.edges) {
    ++valence[e.tail];
    ++valence[e.head];
  }
  for (std::size_t l = 0; l < t.leg_anchor.size(); ++l) {
    ++valence[t.leg_anchor[l]];
    if (t.leg_tag[l] >= 0) marked[t.leg_anchor[l]] = true;
  }
  for (std::size_t v = 0; v < t.vertices; ++v) {
    if (valence[v] != 2 || marked[v]) continue;
    RawType n = t;
    n.add_leg(v, {0, 0}, mark);
    insert_marks(n, mark + 1, r, emit);
  }
}

// Zero-sum partitions of the end counts into nonempty blocks, blocks in non-decreasing
// encoding order so each unordered partition appears once.
void zero_sum_partitions(const std::vector<LatticeVector>& dirs, std::vector<int> left, std::vector<int> floor,
                         std::vector<std::vector<int>>& blocks, const std::function<void()>& emit) {
  if (std::all_of(left.begin(), left.end(), [](int c) { return c == 0; })) {
    emit();
    return;
  }
  std::vector<int> cur(left.size(), 0);
  for (;;) {
    std::size_t k = 0;
    while (k < cur.size() && cur[k] == left[k]) cur[k++] = 0;
    if (k == cur.size()) break;
    ++cur[k];
    // Compare reversed (most significant last) with the previous block.
    if (std::lexicographical_compare(cur.rbegin(), cur.rend(), floor.rbegin(), floor.rend())) continue;
    LatticeVector s;
    for (std::size_t i = 0; i < cur.size(); ++i) s += static_cast<std::int64_t>(cur[i]) * dirs[i];
    if (!s.is_zero()) continue;
    std::vector<int> rest(left);
    for (std::size_t i = 0; i < cur.size(); ++i) rest[i] -= cur[i];
    blocks.push_back(cur);
    zero_sum_partitions(dirs, rest, cur, blocks, emit);
    blocks.pop_back();
  }
}

bool all_trivalent(const CombinatorialType& type) {
  for (std::size_t v = 0; v < type.graph().vertex_count(); ++v) {
    if (type.graph().valence(v) != 3) return false;
  }
  return true;
}

}  // namespace

std::size_t generate_types(const TropicalDegree& degree, std::int64_t genus, std::size_t r, bool connected,
                           const std::function<void(const CombinatorialType&)>& visit) {
  if (!degree.is_reduced()) throw InvalidArgument("degree must be reduced");
  if (!degree.sum().is_zero()) throw InvalidArgument("degree must be balanced");
  if (degree.empty()) return 0;
  const auto admissible = admissible_slopes(LatticePolygon::from_degree(degree));
  std::vector<LatticeVector> dirs;
  std::vector<int> counts;
  for (const auto& [d, k] : degree.grouped()) {
    dirs.push_back(d);
    counts.push_back(k);
  }

  // Unmarked connected types per (block, genus), realizable and deduplicated.
  std::map<std::pair<std::vector<int>, std::int64_t>, std::vector<RawType>> base_memo;
  auto bases = [&](const std::vector<int>& block, std::int64_t g) -> const std::vector<RawType>& {
    auto key = std::make_pair(block, g);
    if (auto it = base_memo.find(key); it != base_memo.end()) return it->second;
    std::vector<RawType> found;
    if (g <= genus_bound(dirs, block)) {
      std::unordered_set<std::string> seen;
      connected_bases(dirs, block, g, admissible, [&](RawType raw) {
        const auto type = raw.to_type();
        if (g > 0 && !stratum_nonempty(type)) return;
        if (!seen.insert(canonical_form(type, LegLabeling::UnorderedEnds)).second) return;
        found.push_back(std::move(raw));
      });
    }
    return base_memo.emplace(std::move(key), std::move(found)).first->second;
  };

  std::unordered_set<std::string> seen;
  std::size_t reported = 0;
  auto finish = [&](const RawType& raw) {
    insert_marks(raw, 0, static_cast<int>(r), [&](const RawType& marked) {
      const auto type = marked.to_type();
      if (!all_trivalent(type)) return;
      if (!seen.insert(canonical_form(type, LegLabeling::UnorderedEnds)).second) return;
      ++reported;
      visit(type);
    });
  };

  if (connected) {
    for (const auto& raw : bases(counts, genus)) finish(raw);
    return reported;
  }
  std::vector<std::vector<int>> blocks;
  zero_sum_partitions(dirs, counts, std::vector<int>(counts.size(), 0), blocks, [&] {
    const std::size_t c = blocks.size();
    // Genera g_i >= 0 with sum g_i = genus + c - 1.
    const std::int64_t target = genus + static_cast<std::int64_t>(c) - 1;
    if (target < 0) return;
    std::vector<std::int64_t> gs(c, 0);
    std::function<void(std::size_t, std::int64_t)> assign = [&](std::size_t i, std::int64_t left) {
      if (i + 1 == c) {
        gs[i] = left;
        std::vector<const std::vector<RawType>*> lists;
        for (std::size_t k = 0; k < c; ++k) {
          lists.push_back(&bases(blocks[k], gs[k]));
          if (lists.back()->empty()) return;
        }
        std::vector<const RawType*> parts(c);
        std::function<void(std::size_t)> product = [&](std::size_t k) {
          if (k == c) {
            finish(disjoint_union(parts));
            return;
          }
          for (const auto& raw : *lists[k]) {
            parts[k] = &raw;
            product(k + 1);
          }
        };
        product(0);
        return;
      }
      for (std::int64_t gi = 0; gi <= left; ++gi) {
        gs[i] = gi;
        assign(i + 1, left - gi);
      }
    };
    assign(0, target);
  });
  return reported;
}

CombinatorialType forget_marks(const CombinatorialType& type) {
  const Graph& g = type.graph();
  struct E {
    std::size_t tail, head;
    LatticeVector slope;
    bool alive = true;
  };
  struct L {
    std::size_t anchor;
    LatticeVector slope;
  };
  std::vector<E> edges;
  for (std::size_t i = 0; i < g.edges().size(); ++i) edges.push_back({g.edges()[i].tail, g.edges()[i].head, type.edge_slopes()[i]});
  std::vector<L> legs;
  for (std::size_t i = 0; i < g.legs().size(); ++i) {
    if (!type.leg_slopes()[i].is_zero()) legs.push_back({g.legs()[i], type.leg_slopes()[i]});
  }
  std::vector<bool> alive(g.vertex_count(), true);
  std::vector<int> weights = type.weights();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      if (!alive[v] || weights[v] != 0) continue;
      std::vector<std::size_t> inc, lg;
      bool loop = false;
      for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!edges[i].alive) continue;
        if (edges[i].tail == v && edges[i].head == v) loop = true;
        if (edges[i].tail == v || edges[i].head == v) inc.push_back(i);
      }
      for (std::size_t i = 0; i < legs.size(); ++i) {
        if (legs[i].anchor == v) lg.push_back(i);
      }
      if (loop || inc.size() + lg.size() != 2 || inc.empty()) continue;
      // Slope and far endpoint of edge i seen from v.
      auto outgoing = [&](std::size_t i) { return edges[i].tail == v ? edges[i].slope : -edges[i].slope; };
      auto other = [&](std::size_t i) { return edges[i].tail == v ? edges[i].head : edges[i].tail; };
      if (inc.size() == 2) {
        const std::size_t u = other(inc[0]), w = other(inc[1]);
        const LatticeVector s = -outgoing(inc[0]);
        edges[inc[0]].alive = edges[inc[1]].alive = false;
        edges.push_back({u, w, s});
      } else {
        legs[lg[0]].anchor = other(inc[0]);
        edges[inc[0]].alive = false;
      }
      alive[v] = false;
      changed = true;
    }
  }
  std::vector<std::size_t> index(g.vertex_count(), 0);
  std::size_t n = 0;
  std::vector<int> w;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!alive[v]) continue;
    index[v] = n++;
    w.push_back(weights[v]);
  }
  std::vector<GraphEdge> ge;
  std::vector<LatticeVector> gs;
  for (const auto& e : edges) {
    if (!e.alive) continue;
    ge.push_back({index[e.tail], index[e.head]});
    gs.push_back(e.slope);
  }
  std::vector<std::size_t> anchors;
  std::vector<LatticeVector> ls;
  for (const auto& l : legs) {
    anchors.push_back(index[l.anchor]);
    ls.push_back(l.slope);
  }
  return CombinatorialType(Graph(n, std::move(ge), std::move(anchors)), std::move(w), std::move(gs), std::move(ls));
}

namespace {

// Vertices whose nonzero outgoing slopes all lie on one line. Their images are never
// extreme points of the segments they sit on.
bool is_flat(const CombinatorialType& t, std::size_t v) {
  LatticeVector first;
  for (const auto& s : t.star(v)) {
    if (s.is_zero()) continue;
    if (first.is_zero()) {
      first = s;
    } else if (cross(first, s) != 0) {
      return false;
    }
  }
  return true;
}

// Dimension of the family of images h(Gamma) over the stratum: the image is fixed by the
// positions of the non-flat vertices (plus one vertex of a component with none of them).
std::int64_t image_dimension(const CombinatorialType& t) {
  const StratumSystem sys = build_stratum_system(t);
  const AffineSolution sol = solve_affine(sys.equalities, sys.rhs);
  const Graph& g = t.graph();
  const auto label = g.component_labels();
  std::vector<bool> keep(g.vertex_count(), false), covered(g.component_count(), false);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!is_flat(t, v)) {
      keep[v] = true;
      covered[label[v]] = true;
    }
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!covered[label[v]]) {
      keep[v] = true;
      covered[label[v]] = true;
    }
  }
  RationalMatrix projected;
  for (const auto& k : sol.kernel) {
    std::vector<Rational> row;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      if (!keep[v]) continue;
      row.push_back(k[StratumSystem::position_unknown(v, 0)]);
      row.push_back(k[StratumSystem::position_unknown(v, 1)]);
    }
    if (projected.cols() == 0) projected = RationalMatrix(0, row.size());
    projected.append_row(row);
  }
  return projected.rows() == 0 ? 0 : static_cast<std::int64_t>(rank(projected));
}

}  // namespace

AuditReport dimension_bound_audit(const LatticePolygon& polygon, std::int64_t genus) {
  AuditReport report;
  report.r = boundary_points(polygon).count + genus;
  auto check = [&](const CombinatorialType& t, const std::string& what) {
    const std::int64_t dim = stratum_dimension(t);
    const std::int64_t expdim = expected_dimension(t, 0);
    report.max_dimension = std::max(report.max_dimension, dim + report.r);
    if (dim < expdim) {
      report.violations.push_back(what + ": dimension " + std::to_string(dim) + " below expected " + std::to_string(expdim));
    }
    std::int64_t image = dim;
    if (dim + report.r >= 2 * report.r) {
      ++report.superabundant;
      image = image_dimension(t);
    }
    report.max_image_dimension = std::max(report.max_image_dimension, image + report.r);
    if (image + report.r >= 2 * report.r) {
      report.violations.push_back(what + ": image family of dimension " + std::to_string(image) + " plus " +
                                  std::to_string(report.r) + " marks reaches 2r");
    }
  };
  generate_types(dual_degree(polygon), genus, 0, false, [&](const CombinatorialType& t) {
    ++report.types_checked;
    const std::string id = type_id(canonical_form(t, LegLabeling::UnorderedEnds));
    check(t, id);
    for (std::size_t e = 0; e < t.graph().edges().size(); ++e) {
      const std::size_t one[] = {e};
      ++report.contractions_checked;
      check(contract(t, one), id + "/" + std::to_string(e));
    }
  });
  return report;
}

}  // namespace tropenum
