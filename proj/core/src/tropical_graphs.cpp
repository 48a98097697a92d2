#include "tropenum/tropical_graphs.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>

#include "tropenum/errors.hpp"

namespace tropenum {

Graph::Graph(std::size_t vertex_count, std::vector<GraphEdge> edges, std::vector<std::size_t> leg_anchors)
    : vertex_count_(vertex_count), edges_(std::move(edges)), legs_(std::move(leg_anchors)) {
  for (const auto& e : edges_) {
    if (e.tail >= vertex_count_ || e.head >= vertex_count_) throw InvalidArgument("edge endpoint out of range");
  }
  for (auto a : legs_) {
    if (a >= vertex_count_) throw InvalidArgument("leg anchor out of range");
  }
}

std::size_t Graph::valence(std::size_t v) const {
  std::size_t val = static_cast<std::size_t>(std::count(legs_.begin(), legs_.end(), v));
  for (const auto& e : edges_) {
    if (e.tail == v) ++val;
    if (e.head == v) ++val;
  }
  return val;
}

std::vector<std::size_t> Graph::component_labels() const {
  std::vector<std::size_t> parent(vertex_count_);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& e : edges_) parent[find(e.tail)] = find(e.head);
  // Relabel roots in order of first appearance.
  std::vector<std::size_t> label(vertex_count_), root_label(vertex_count_, vertex_count_);
  std::size_t next = 0;
  for (std::size_t v = 0; v < vertex_count_; ++v) {
    const std::size_t r = find(v);
    if (root_label[r] == vertex_count_) root_label[r] = next++;
    label[v] = root_label[r];
  }
  return label;
}

std::size_t Graph::component_count() const {
  if (vertex_count_ == 0) return 0;
  const auto labels = component_labels();
  return *std::max_element(labels.begin(), labels.end()) + 1;
}

std::size_t Graph::first_betti() const { return edges_.size() + component_count() - vertex_count_; }

std::int64_t Graph::euler_characteristic() const {
  return static_cast<std::int64_t>(component_count()) - static_cast<std::int64_t>(first_betti());
}

TropicalCurve::TropicalCurve(Graph graph, std::vector<int> weights, std::vector<Rational> lengths)
    : graph_(std::move(graph)), weights_(std::move(weights)), lengths_(std::move(lengths)) {
  if (weights_.size() != graph_.vertex_count()) throw InvalidArgument("one weight per vertex required");
  if (lengths_.size() != graph_.edges().size()) throw InvalidArgument("one length per edge required");
  for (int w : weights_) {
    if (w < 0) throw InvalidArgument("weights must be non-negative");
  }
  for (const auto& l : lengths_) {
    if (sgn(l) <= 0) throw InvalidArgument("edge lengths must be positive");
  }
}

CombinatorialType::CombinatorialType(Graph graph, std::vector<int> weights, std::vector<LatticeVector> edge_slopes,
                                     std::vector<LatticeVector> leg_slopes)
    : graph_(std::move(graph)),
      weights_(std::move(weights)),
      edge_slopes_(std::move(edge_slopes)),
      leg_slopes_(std::move(leg_slopes)) {
  if (weights_.size() != graph_.vertex_count()) throw InvalidArgument("one weight per vertex required");
  if (edge_slopes_.size() != graph_.edges().size()) throw InvalidArgument("one slope per edge required");
  if (leg_slopes_.size() != graph_.legs().size()) throw InvalidArgument("one slope per leg required");
  for (int w : weights_) {
    if (w < 0) throw InvalidArgument("weights must be non-negative");
  }
}

std::vector<LatticeVector> CombinatorialType::star(std::size_t v) const {
  std::vector<LatticeVector> out;
  const auto& edges = graph_.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].tail == v) out.push_back(edge_slopes_[i]);
    if (edges[i].head == v) out.push_back(-edge_slopes_[i]);
  }
  for (std::size_t i = 0; i < graph_.legs().size(); ++i) {
    if (graph_.legs()[i] == v) out.push_back(leg_slopes_[i]);
  }
  return out;
}

std::vector<std::size_t> CombinatorialType::contracted_legs() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < leg_slopes_.size(); ++i) {
    if (leg_slopes_[i].is_zero()) out.push_back(i);
  }
  return out;
}

void ParamTropicalCurve::validate() const {
  const auto& edges = type.graph().edges();
  if (lengths.size() != edges.size()) throw InvalidArgument("one length per edge required");
  if (positions.size() != type.graph().vertex_count()) throw InvalidArgument("one position per vertex required");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (sgn(lengths[i]) <= 0) throw InvalidArgument("edge lengths must be positive");
    const RationalPoint expected = along(positions[edges[i].tail], lengths[i], type.edge_slopes()[i]);
    if (!(expected == positions[edges[i].head])) throw InvalidArgument("edge relation violated on edge " + std::to_string(i));
  }
}

std::int64_t genus(const Graph& graph, std::span<const int> weights) {
  std::int64_t g = 1 - graph.euler_characteristic();
  for (int w : weights) g += w;
  return g;
}

std::int64_t genus(const TropicalCurve& curve) { return genus(curve.graph(), curve.weights()); }
std::int64_t genus(const CombinatorialType& type) { return genus(type.graph(), type.weights()); }

bool is_stable(const TropicalCurve& curve) {
  for (std::size_t v = 0; v < curve.graph().vertex_count(); ++v) {
    const auto val = static_cast<std::int64_t>(curve.graph().valence(v));
    if (2 * curve.weights()[v] - 2 + val < 1) return false;
  }
  return true;
}

bool check_balancing(const CombinatorialType& type) {
  for (std::size_t v = 0; v < type.graph().vertex_count(); ++v) {
    LatticeVector s;
    for (const auto& e : type.star(v)) s += e;
    if (!s.is_zero()) return false;
  }
  return true;
}

DegreeReport degree(const CombinatorialType& type) {
  DegreeReport out;
  std::vector<LatticeVector> nonzero;
  for (const auto& s : type.leg_slopes()) {
    out.extended.push_back(s);
    if (s.is_zero()) {
      ++out.contracted;
    } else {
      nonzero.push_back(s);
    }
  }
  out.degree = TropicalDegree(std::move(nonzero));
  return out;
}

CombinatorialType contract(const CombinatorialType& type, std::span<const std::size_t> edge_set) {
  const Graph& g = type.graph();
  const std::size_t n = g.vertex_count();
  std::vector<bool> contracted(g.edges().size(), false);
  for (auto e : edge_set) {
    if (e >= g.edges().size()) throw InvalidArgument("edge index out of range");
    contracted[e] = true;
  }
  std::vector<GraphEdge> inner;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    if (contracted[i]) inner.push_back(g.edges()[i]);
  }
  const Graph sub(n, inner, {});
  const auto label = sub.component_labels();
  const std::size_t m = sub.component_count();
  std::vector<int> weights(m, 0);
  std::vector<std::int64_t> vcount(m, 0), ecount(m, 0);
  for (std::size_t v = 0; v < n; ++v) {
    weights[label[v]] += type.weights()[v];
    ++vcount[label[v]];
  }
  for (const auto& e : inner) ++ecount[label[e.tail]];
  for (std::size_t c = 0; c < m; ++c) weights[c] += static_cast<int>(ecount[c] - vcount[c] + 1);
  std::vector<GraphEdge> edges;
  std::vector<LatticeVector> slopes;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    if (contracted[i]) continue;
    edges.push_back({label[g.edges()[i].tail], label[g.edges()[i].head]});
    slopes.push_back(type.edge_slopes()[i]);
  }
  std::vector<std::size_t> legs;
  for (auto a : g.legs()) legs.push_back(label[a]);
  return CombinatorialType(Graph(m, std::move(edges), std::move(legs)), std::move(weights), std::move(slopes),
                           type.leg_slopes());
}

std::int64_t overvalency(const Graph& graph) {
  std::int64_t ov = 0;
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    ov += std::max<std::int64_t>(0, static_cast<std::int64_t>(graph.valence(v)) - 3);
  }
  return ov;
}

std::int64_t expected_dimension(const CombinatorialType& type, std::int64_t r) {
  constexpr std::int64_t rank_n = 2;
  const auto ends = static_cast<std::int64_t>(type.leg_slopes().size() - type.contracted_leg_count());
  return ends + r + (rank_n - 3) * type.graph().euler_characteristic() - overvalency(type.graph());
}

BigInt mikhalkin_multiplicity(const CombinatorialType& type) {
  const Graph& g = type.graph();
  std::vector<bool> touches_contracted(g.vertex_count(), false);
  for (auto leg : type.contracted_legs()) touches_contracted[g.legs()[leg]] = true;
  BigInt product = 1;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (type.weights()[v] != 0) throw InvalidArgument("Mikhalkin multiplicity needs a weightless type");
    if (g.valence(v) != 3) throw InvalidArgument("Mikhalkin multiplicity needs a trivalent type");
    if (touches_contracted[v]) continue;
    const auto star = type.star(v);
    product *= static_cast<long>(std::llabs(cross(star[0], star[1])));
  }
  return product;
}

namespace {

using Code = std::vector<std::int64_t>;

// Structure shared by canonical labelling and automorphism counting.
class Structure {
 public:
  Structure(const CombinatorialType& type, LegLabeling labeling) : type_(type) {
    const Graph& g = type.graph();
    n_ = g.vertex_count();
    base_.assign(n_, {});
    std::vector<std::vector<Code>> legs(n_), loops(n_);
    std::int64_t contracted_rank = 0;
    for (std::size_t i = 0; i < g.legs().size(); ++i) {
      const auto& s = type.leg_slopes()[i];
      Code label;
      if (labeling == LegLabeling::Ordered) {
        label = {static_cast<std::int64_t>(i), s.x, s.y};
      } else if (s.is_zero()) {
        label = {contracted_rank++, 0, 0};
      } else {
        label = {-1, s.x, s.y};
      }
      legs[g.legs()[i]].push_back(label);
    }
    adjacency_.assign(n_, {});
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
      const auto& e = g.edges()[i];
      const auto& s = type.edge_slopes()[i];
      if (e.is_loop()) {
        const LatticeVector c = std::max(s, -s);
        loops[e.tail].push_back({c.x, c.y});
        continue;
      }
      adjacency_[e.tail].push_back({e.head, s});
      adjacency_[e.head].push_back({e.tail, -s});
      const auto key = std::minmax(e.tail, e.head);
      between_[{key.first, key.second}].push_back(e.tail == key.first ? s : -s);
    }
    for (auto& [k, v] : between_) std::sort(v.begin(), v.end());
    for (std::size_t v = 0; v < n_; ++v) {
      std::sort(legs[v].begin(), legs[v].end());
      std::sort(loops[v].begin(), loops[v].end());
      Code& b = base_[v];
      b.push_back(type.weights()[v]);
      b.push_back(static_cast<std::int64_t>(legs[v].size()));
      for (const auto& l : legs[v]) b.insert(b.end(), l.begin(), l.end());
      b.push_back(static_cast<std::int64_t>(loops[v].size()));
      for (const auto& l : loops[v]) b.insert(b.end(), l.begin(), l.end());
      b.push_back(static_cast<std::int64_t>(adjacency_[v].size()));
    }
  }

  std::size_t size() const { return n_; }

  std::vector<int> initial_colors() const { return rank_codes(base_); }

  // Color refinement until stable; ids are ranks of sorted signatures.
  std::vector<int> refine(std::vector<int> colors) const {
    std::size_t classes = count_classes(colors);
    for (;;) {
      std::vector<Code> sig(n_);
      for (std::size_t v = 0; v < n_; ++v) {
        std::vector<Code> nb;
        for (const auto& [w, s] : adjacency_[v]) nb.push_back({colors[w], s.x, s.y});
        std::sort(nb.begin(), nb.end());
        sig[v].push_back(colors[v]);
        for (const auto& c : nb) sig[v].insert(sig[v].end(), c.begin(), c.end());
      }
      colors = rank_codes(sig);
      const std::size_t now = count_classes(colors);
      if (now == classes) return colors;
      classes = now;
    }
  }

  Code encode(const std::vector<int>& order) const {
    Code out{static_cast<std::int64_t>(n_)};
    std::vector<std::size_t> by_rank(n_);
    for (std::size_t v = 0; v < n_; ++v) by_rank[static_cast<std::size_t>(order[v])] = v;
    for (std::size_t r = 0; r < n_; ++r) {
      const Code& b = base_[by_rank[r]];
      out.push_back(static_cast<std::int64_t>(b.size()));
      out.insert(out.end(), b.begin(), b.end());
    }
    std::vector<Code> edges;
    for (const auto& [key, slopes] : between_) {
      std::int64_t a = order[key.first], b = order[key.second];
      for (auto s : slopes) {
        if (a < b) {
          edges.push_back({a, b, s.x, s.y});
        } else {
          edges.push_back({b, a, -s.x, -s.y});
        }
      }
    }
    std::sort(edges.begin(), edges.end());
    for (const auto& e : edges) out.insert(out.end(), e.begin(), e.end());
    return out;
  }

  void canonical(std::vector<int> colors, Code& best, bool& have) const {
    colors = refine(std::move(colors));
    if (count_classes(colors) == n_) {
      Code c = encode(colors);
      if (!have || c < best) {
        best = std::move(c);
        have = true;
      }
      return;
    }
    const int cell = smallest_nontrivial_cell(colors);
    for (std::size_t v = 0; v < n_; ++v) {
      if (colors[v] != cell) continue;
      std::vector<int> next(n_);
      for (std::size_t w = 0; w < n_; ++w) next[w] = 2 * colors[w];
      next[v] = 2 * colors[v] - 1;
      canonical(std::move(next), best, have);
    }
  }

  std::vector<LatticeVector> slopes_between(std::size_t u, std::size_t v) const {
    if (u == v) return {};
    const auto key = std::minmax(u, v);
    auto it = between_.find({key.first, key.second});
    if (it == between_.end()) return {};
    std::vector<LatticeVector> out = it->second;
    if (u != key.first) {
      for (auto& s : out) s = -s;
      std::sort(out.begin(), out.end());
    }
    return out;
  }

  BigInt edge_symmetry_factor() const {
    BigInt f = 1;
    auto fact = [](std::size_t k) {
      BigInt r = 1;
      for (std::size_t i = 2; i <= k; ++i) r *= static_cast<unsigned long>(i);
      return r;
    };
    for (const auto& [key, slopes] : between_) {
      for (std::size_t i = 0; i < slopes.size();) {
        std::size_t j = i;
        while (j < slopes.size() && slopes[j] == slopes[i]) ++j;
        f *= fact(j - i);
        i = j;
      }
    }
    std::map<std::pair<std::size_t, LatticeVector>, std::size_t> loops;
    const auto& edges = type_.graph().edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!edges[i].is_loop()) continue;
      const auto& s = type_.edge_slopes()[i];
      ++loops[{edges[i].tail, std::max(s, -s)}];
    }
    for (const auto& [key, k] : loops) {
      f *= fact(k);
      if (key.second.is_zero()) f *= BigInt(1) << static_cast<mp_bitcnt_t>(k);
    }
    return f;
  }

  const Code& base(std::size_t v) const { return base_[v]; }

  static std::size_t count_classes(const std::vector<int>& colors) {
    std::vector<int> c = colors;
    std::sort(c.begin(), c.end());
    return static_cast<std::size_t>(std::unique(c.begin(), c.end()) - c.begin());
  }

 private:
  static std::vector<int> rank_codes(const std::vector<Code>& codes) {
    std::vector<Code> sorted = codes;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> out(codes.size());
    for (std::size_t v = 0; v < codes.size(); ++v) {
      out[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), codes[v]) - sorted.begin());
    }
    return out;
  }

  int smallest_nontrivial_cell(const std::vector<int>& colors) const {
    std::map<int, int> sizes;
    for (int c : colors) ++sizes[c];
    for (const auto& [c, k] : sizes) {
      if (k > 1) return c;
    }
    return -1;
  }

  const CombinatorialType& type_;
  std::size_t n_ = 0;
  std::vector<Code> base_;
  std::vector<std::vector<std::pair<std::size_t, LatticeVector>>> adjacency_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<LatticeVector>> between_;
};

}  // namespace

std::string canonical_form(const CombinatorialType& type, LegLabeling labeling) {
  const Structure s(type, labeling);
  Code best;
  bool have = false;
  if (s.size() == 0) {
    best = {0};
  } else {
    s.canonical(s.initial_colors(), best, have);
  }
  std::string out;
  out.reserve(best.size() * 3);
  for (std::size_t i = 0; i < best.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(best[i]);
  }
  return out;
}

std::string type_id(const std::string& canonical) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

BigInt automorphism_count(const CombinatorialType& type) {
  const Structure s(type, LegLabeling::Ordered);
  const std::size_t n = s.size();
  if (n == 0) return 1;
  const std::vector<int> colors = s.refine(s.initial_colors());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return colors[a] < colors[b]; });
  std::vector<std::size_t> image(n, n);
  std::vector<bool> used(n, false);
  BigInt vertex_maps = 0;
  std::function<void(std::size_t)> extend = [&](std::size_t depth) {
    if (depth == n) {
      ++vertex_maps;
      return;
    }
    const std::size_t v = order[depth];
    for (std::size_t w = 0; w < n; ++w) {
      if (used[w] || colors[w] != colors[v]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < depth && ok; ++k) {
        const std::size_t u = order[k];
        ok = s.slopes_between(u, v) == s.slopes_between(image[u], w);
      }
      if (!ok) continue;
      image[v] = w;
      used[w] = true;
      extend(depth + 1);
      used[w] = false;
    }
  };
  extend(0);
  return vertex_maps * s.edge_symmetry_factor();
}

}  // namespace tropenum
