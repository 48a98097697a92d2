#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <tuple>
#include <vector>

#include "tropenum/enumeration.hpp"
#include "tropenum/errors.hpp"
#include "tropenum/serialization.hpp"
#include "tropenum/tropical_graphs.hpp"

using namespace tropenum;

namespace {

std::vector<CombinatorialType> type_pool() {
  std::vector<CombinatorialType> pool;
  for (std::int64_t d = 1; d <= 3; ++d) {
    const TropicalDegree deg = dual_degree(LatticePolygon::triangle(d));
    for (std::int64_t g = 0; g <= (d == 3 ? 1 : 0); ++g) {
      for (std::size_t r = 0; r <= (g == 0 ? 1u : 0u); ++r) {
        generate_types(deg, g, r, true, [&](const CombinatorialType& t) { pool.push_back(t); });
      }
    }
  }
  return pool;
}

const std::vector<CombinatorialType>& pool() {
  static const auto p = type_pool();
  return p;
}

// Reindexes vertices by perm and reverses every other edge (negating its slope).
CombinatorialType relabel(const CombinatorialType& t, const std::vector<std::size_t>& perm, std::mt19937_64& rng) {
  const Graph& g = t.graph();
  std::vector<std::size_t> order(g.edges().size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<GraphEdge> edges;
  std::vector<LatticeVector> slopes;
  for (auto i : order) {
    const auto& e = g.edges()[i];
    if (rng() % 2) {
      edges.push_back({perm[e.head], perm[e.tail]});
      slopes.push_back(-t.edge_slopes()[i]);
    } else {
      edges.push_back({perm[e.tail], perm[e.head]});
      slopes.push_back(t.edge_slopes()[i]);
    }
  }
  std::vector<std::size_t> legs;
  for (auto a : g.legs()) legs.push_back(perm[a]);
  std::vector<int> weights(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) weights[perm[v]] = t.weights()[v];
  return CombinatorialType(Graph(g.vertex_count(), edges, legs), weights, slopes, t.leg_slopes());
}

// Vertex permutations fixing legs, weights and the multiset of slope-labelled edges; each
// such permutation lifts to prod(mult!) edge maps.
BigInt brute_automorphisms(const CombinatorialType& t) {
  const Graph& g = t.graph();
  using Key = std::tuple<std::size_t, std::size_t, std::int64_t, std::int64_t>;
  auto key = [](std::size_t a, std::size_t b, const LatticeVector& s) {
    if (a > b || (a == b && s < LatticeVector{})) return Key{b, a, -s.x, -s.y};
    return Key{a, b, s.x, s.y};
  };
  std::map<Key, int> base;
  for (std::size_t i = 0; i < g.edges().size(); ++i) ++base[key(g.edges()[i].tail, g.edges()[i].head, t.edge_slopes()[i])];
  std::vector<std::size_t> perm(g.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  BigInt total = 0;
  do {
    bool ok = true;
    for (auto a : g.legs()) ok = ok && perm[a] == a;
    for (std::size_t v = 0; v < perm.size() && ok; ++v) ok = t.weights()[perm[v]] == t.weights()[v];
    if (!ok) continue;
    std::map<Key, int> image;
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
      ++image[key(perm[g.edges()[i].tail], perm[g.edges()[i].head], t.edge_slopes()[i])];
    }
    if (image != base) continue;
    BigInt lifts = 1;
    for (const auto& [k, m] : base) {
      for (int j = 2; j <= m; ++j) lifts *= j;
    }
    total += lifts;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST_CASE("balancing and genus survive contraction on 200 random types") {
  const auto& types = pool();
  REQUIRE(types.size() > 50);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const CombinatorialType& t = types[rng() % types.size()];
    REQUIRE(check_balancing(t));
    std::vector<std::size_t> edges;
    for (std::size_t e = 0; e < t.graph().edges().size(); ++e) {
      if (rng() % 3 == 0) edges.push_back(e);
    }
    const CombinatorialType c = contract(t, edges);
    CHECK(genus(c) == genus(t));
    CHECK(check_balancing(c));
    CHECK(degree(c).degree == degree(t).degree);
    CHECK(c.graph().edges().size() == t.graph().edges().size() - edges.size());
  }
}

TEST_CASE("genus counts loops and weights") {
  // Two vertices joined by three edges: b1 = 2.
  const Graph theta(2, {{0, 1}, {0, 1}, {0, 1}}, {});
  const std::vector<int> w0{0, 0};
  CHECK(genus(theta, w0) == 2);
  const std::vector<int> w1{1, 2};
  CHECK(genus(theta, w1) == 5);
  CHECK(theta.euler_characteristic() == -1);
  const Graph two(2, {}, {0, 1});
  CHECK(two.component_count() == 2);
  CHECK(genus(two, w0) == -1);
}

TEST_CASE("canonical form is invariant under relabelling and separates types") {
  const auto& types = pool();
  std::mt19937_64 rng(5);
  std::map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < types.size(); ++i) {
    const auto& t = types[i];
    const std::string c = canonical_form(t, LegLabeling::UnorderedEnds);
    std::vector<std::size_t> perm(t.graph().vertex_count());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(canonical_form(relabel(t, perm, rng), LegLabeling::UnorderedEnds) == c);
    CHECK(type_id(c).size() > 0);
    seen.emplace(c, i);
  }
  // generate_types reports each class once.
  CHECK(seen.size() == types.size());
}

TEST_CASE("automorphisms agree with a permutation scan") {
  const auto& types = pool();
  std::size_t checked = 0;
  for (const auto& t : types) {
    if (t.graph().vertex_count() > 6) continue;
    CHECK(automorphism_count(t) == brute_automorphisms(t));
    ++checked;
  }
  CHECK(checked > 20);
  // Doubled edge between two vertices: the two copies can be swapped.
  const CombinatorialType doubled(Graph(2, {{0, 1}, {0, 1}}, {0, 0, 1, 1}), {0, 0}, {{1, 0}, {1, 0}},
                                  {{-1, 1}, {-1, -1}, {1, 1}, {1, -1}});
  CHECK(automorphism_count(doubled) == 2);
  CHECK(brute_automorphisms(doubled) == 2);
}

TEST_CASE("Mikhalkin multiplicity is a product of pair-independent vertex determinants") {
  for (const auto& t : pool()) {
    if (t.contracted_leg_count() != 0) continue;
    BigInt product = 1;
    for (std::size_t v = 0; v < t.graph().vertex_count(); ++v) {
      const auto s = t.star(v);
      REQUIRE(s.size() == 3);
      const auto d01 = std::llabs(cross(s[0], s[1]));
      CHECK(d01 == std::llabs(cross(s[1], s[2])));
      CHECK(d01 == std::llabs(cross(s[0], s[2])));
      product *= static_cast<long>(d01);
    }
    CHECK(mikhalkin_multiplicity(t) == product);
  }
  const CombinatorialType weighted(Graph(1, {}, {0, 0, 0}), {1}, {}, {{1, 0}, {0, 1}, {-1, -1}});
  CHECK_THROWS_AS(mikhalkin_multiplicity(weighted), InvalidArgument);
}

TEST_CASE("expected dimension of a trivalent tree is ends - 1 plus marks") {
  const TropicalDegree deg = dual_degree(LatticePolygon::triangle(2));
  generate_types(deg, 0, 0, true, [&](const CombinatorialType& t) {
    CHECK(expected_dimension(t, 0) == 5);
    CHECK(expected_dimension(t, 2) == 7);
  });
}

TEST_CASE("JSON round trip") {
  for (const auto& t : pool()) {
    const std::string j = to_json(t);
    CHECK(type_from_json(j) == t);
    CHECK(to_json(type_from_json(j)) == j);
  }
  CHECK_THROWS_AS(type_from_json("{\"vertices\": 3"), ParseError);
  CHECK_THROWS_AS(type_from_json("{}"), ParseError);
}
