#include "tropenum/moduli_strata.hpp"

#include <numeric>
#include <optional>

#include "tropenum/errors.hpp"
#include "tropenum/random.hpp"

namespace tropenum {

namespace {

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t counter_random(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  return splitmix(splitmix(splitmix(seed) ^ stream) ^ counter);
}

std::int64_t counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter, std::int64_t bound) {
  const std::uint64_t range = 2 * static_cast<std::uint64_t>(bound) + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  for (std::uint64_t k = 0;; ++k) {
    const std::uint64_t v = counter_random(seed, stream, (counter << 8) + k);
    if (v < limit) return static_cast<std::int64_t>(v % range) - bound;
  }
}

PointConfiguration sample_configuration(std::size_t count, std::uint64_t seed, int attempt) {
  if (attempt < 0 || attempt > 40) throw InvalidArgument("attempt out of range");
  const std::int64_t bound = std::int64_t{1} << (10 + attempt);
  PointConfiguration q;
  q.seed = seed;
  q.attempt = attempt;
  for (std::size_t i = 0; i < count; ++i) {
    const auto x = counter_uniform(seed, static_cast<std::uint64_t>(attempt), 2 * i, bound);
    const auto y = counter_uniform(seed, static_cast<std::uint64_t>(attempt), 2 * i + 1, bound);
    q.points.push_back({Rational(static_cast<long>(x)), Rational(static_cast<long>(y))});
  }
  return q;
}

std::vector<std::size_t> StratumSystem::length_unknowns() const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < edge_count; ++e) out.push_back(length_unknown(e));
  return out;
}

StratumSystem build_stratum_system(const CombinatorialType& type, const PointConfiguration* points) {
  const Graph& g = type.graph();
  StratumSystem sys;
  sys.vertex_count = g.vertex_count();
  sys.edge_count = g.edges().size();
  const std::size_t n = sys.unknowns();
  const auto contracted = type.contracted_legs();
  const std::size_t rows = 2 * sys.edge_count + (points ? 2 * contracted.size() : 0);
  sys.equalities = RationalMatrix(rows, n);
  sys.rhs.assign(rows, Rational(0));
  std::size_t row = 0;
  for (std::size_t e = 0; e < sys.edge_count; ++e) {
    const auto& edge = g.edges()[e];
    const auto& s = type.edge_slopes()[e];
    for (int c = 0; c < 2; ++c) {
      sys.equalities.at(row, StratumSystem::position_unknown(edge.head, c)) += 1;
      sys.equalities.at(row, StratumSystem::position_unknown(edge.tail, c)) -= 1;
      sys.equalities.at(row, sys.length_unknown(e)) = -static_cast<long>(c == 0 ? s.x : s.y);
      ++row;
    }
  }
  if (points) {
    if (points->points.size() != contracted.size()) {
      throw InvalidArgument("point configuration size differs from the number of contracted legs");
    }
    for (std::size_t i = 0; i < contracted.size(); ++i) {
      const std::size_t v = g.legs()[contracted[i]];
      sys.equalities.at(row, StratumSystem::position_unknown(v, 0)) = 1;
      sys.rhs[row++] = points->points[i].x;
      sys.equalities.at(row, StratumSystem::position_unknown(v, 1)) = 1;
      sys.rhs[row++] = points->points[i].y;
    }
  }
  return sys;
}

std::int64_t stratum_dimension(const CombinatorialType& type) {
  const StratumSystem sys = build_stratum_system(type);
  return static_cast<std::int64_t>(sys.unknowns()) - static_cast<std::int64_t>(rank(sys.equalities));
}

namespace {

// Some positive combination of the vectors vanishes iff no nonzero functional is >= 0 on
// all of them and > 0 on one. Such a functional can be taken perpendicular or parallel to
// one of the vectors.
bool positively_dependent(const std::vector<LatticeVector>& vs) {
  if (vs.empty()) return true;
  std::vector<LatticeVector> candidates;
  for (const auto& v : vs) {
    candidates.insert(candidates.end(), {v, -v, rotate_ccw(v), -rotate_ccw(v)});
  }
  for (const auto& f : candidates) {
    bool nonnegative = true, positive = false;
    for (const auto& v : vs) {
      const std::int64_t d = dot(f, v);
      nonnegative = nonnegative && d >= 0;
      positive = positive || d > 0;
    }
    if (nonnegative && positive) return false;
  }
  return true;
}

// Tree edges are free; a component with one cycle closes up iff its oriented slopes are
// positively dependent. nullopt when some component has more than one cycle.
std::optional<bool> nonempty_by_cycles(const CombinatorialType& type) {
  const Graph& g = type.graph();
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> root(n);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](std::size_t v) {
    while (root[v] != v) v = root[v] = root[root[v]];
    return v;
  };
  std::vector<std::vector<std::size_t>> forest(n);
  std::vector<std::size_t> extra;  // edges closing a cycle
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const std::size_t a = find(g.edges()[e].tail), b = find(g.edges()[e].head);
    if (a == b) {
      extra.push_back(e);
      continue;
    }
    root[a] = b;
    forest[g.edges()[e].tail].push_back(e);
    forest[g.edges()[e].head].push_back(e);
  }
  std::vector<std::size_t> parent(n, n), parent_edge(n, 0), depth(n, 0), label(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (label[r] != n) continue;
    label[r] = r;
    std::vector<std::size_t> stack{r};
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (auto e : forest[v]) {
        const std::size_t w = g.edges()[e].tail == v ? g.edges()[e].head : g.edges()[e].tail;
        if (label[w] != n) continue;
        label[w] = r;
        parent[w] = v;
        parent_edge[w] = e;
        depth[w] = depth[v] + 1;
        stack.push_back(w);
      }
    }
  }
  std::vector<int> cycles(n, 0);
  for (auto e : extra) {
    if (++cycles[label[g.edges()[e].tail]] > 1) return std::nullopt;
  }
  for (auto e : extra) {
    // Walk tail -> head along the extra edge, then back through the tree.
    std::vector<LatticeVector> loop;
    auto push = [&](const LatticeVector& s) {
      if (!s.is_zero()) loop.push_back(s);
    };
    push(type.edge_slopes()[e]);
    std::size_t a = g.edges()[e].head, b = g.edges()[e].tail;
    // Path head -> tail: climb from both ends to the common ancestor.
    std::vector<LatticeVector> up, down;
    while (a != b) {
      if (depth[a] >= depth[b]) {
        const auto pe = parent_edge[a];
        const auto& edge = g.edges()[pe];
        up.push_back(edge.tail == a ? type.edge_slopes()[pe] : -type.edge_slopes()[pe]);
        a = parent[a];
      } else {
        const auto pe = parent_edge[b];
        const auto& edge = g.edges()[pe];
        down.push_back(edge.head == b ? type.edge_slopes()[pe] : -type.edge_slopes()[pe]);
        b = parent[b];
      }
    }
    for (const auto& s : up) push(s);
    for (const auto& s : down) push(s);
    if (!positively_dependent(loop)) return false;
  }
  return true;
}

}  // namespace

bool stratum_nonempty(const CombinatorialType& type) {
  if (const auto fast = nonempty_by_cycles(type)) return *fast;
  const StratumSystem sys = build_stratum_system(type);
  const auto lengths = sys.length_unknowns();
  return strictly_feasible(sys.equalities, sys.rhs, lengths);
}

std::vector<ParamTropicalCurve> solve_through_points(const CombinatorialType& type, const PointConfiguration& points) {
  const StratumSystem sys = build_stratum_system(type, &points);
  const AffineSolution sol = solve_affine(sys.equalities, sys.rhs);
  if (!sol.consistent) return {};
  if (sol.dimension() > 0) {
    std::vector<std::optional<Rational>> lower(sys.unknowns());
    for (auto j : sys.length_unknowns()) lower[j] = Rational(0);
    if (feasible(sys.equalities, sys.rhs, lower)) {
      throw DegenerateConfiguration("positive-dimensional family of solutions through the points");
    }
    return {};
  }
  ParamTropicalCurve curve;
  curve.type = type;
  for (std::size_t e = 0; e < sys.edge_count; ++e) {
    const Rational& l = sol.particular[sys.length_unknown(e)];
    if (sgn(l) < 0) return {};
    curve.lengths.push_back(l);
  }
  for (const auto& l : curve.lengths) {
    if (sgn(l) == 0) throw DegenerateConfiguration("solution on the boundary of the stratum (zero edge length)");
  }
  for (std::size_t v = 0; v < sys.vertex_count; ++v) {
    curve.positions.push_back({sol.particular[StratumSystem::position_unknown(v, 0)],
                               sol.particular[StratumSystem::position_unknown(v, 1)]});
  }
  curve.validate();
  return {curve};
}

bool is_regular(const CombinatorialType& type) {
  if (!stratum_nonempty(type)) return false;
  return stratum_dimension(type) ==
         expected_dimension(type, static_cast<std::int64_t>(type.contracted_leg_count()));
}

}  // namespace tropenum
