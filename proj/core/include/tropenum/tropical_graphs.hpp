#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tropenum/lattice_geometry.hpp"
#include "tropenum/rational.hpp"

namespace tropenum {

struct GraphEdge {
  std::size_t tail = 0;
  std::size_t head = 0;
  bool is_loop() const { return tail == head; }
  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

// Finite graph with ordered legs. legs()[i] is the anchor vertex of the i-th leg.
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t vertex_count, std::vector<GraphEdge> edges, std::vector<std::size_t> leg_anchors);

  std::size_t vertex_count() const { return vertex_count_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  const std::vector<std::size_t>& legs() const { return legs_; }

  // Legs plus edge incidences; a loop counts twice.
  std::size_t valence(std::size_t v) const;
  std::vector<std::size_t> component_labels() const;
  std::size_t component_count() const;
  std::size_t first_betti() const;
  std::int64_t euler_characteristic() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t vertex_count_ = 0;
  std::vector<GraphEdge> edges_;
  std::vector<std::size_t> legs_;
};

class TropicalCurve {
 public:
  TropicalCurve(Graph graph, std::vector<int> weights, std::vector<Rational> lengths);

  const Graph& graph() const { return graph_; }
  const std::vector<int>& weights() const { return weights_; }
  const std::vector<Rational>& lengths() const { return lengths_; }

 private:
  Graph graph_;
  std::vector<int> weights_;
  std::vector<Rational> lengths_;
};

// Graph, vertex weights and slopes. Edge slopes are oriented tail -> head; leg slopes
// point away from the anchor.
class CombinatorialType {
 public:
  CombinatorialType() = default;
  CombinatorialType(Graph graph, std::vector<int> weights, std::vector<LatticeVector> edge_slopes,
                    std::vector<LatticeVector> leg_slopes);

  const Graph& graph() const { return graph_; }
  const std::vector<int>& weights() const { return weights_; }
  const std::vector<LatticeVector>& edge_slopes() const { return edge_slopes_; }
  const std::vector<LatticeVector>& leg_slopes() const { return leg_slopes_; }

  // Outgoing slopes at v; a loop contributes s and -s.
  std::vector<LatticeVector> star(std::size_t v) const;
  std::vector<std::size_t> contracted_legs() const;
  std::size_t contracted_leg_count() const { return contracted_legs().size(); }

  friend bool operator==(const CombinatorialType&, const CombinatorialType&) = default;

 private:
  Graph graph_;
  std::vector<int> weights_;
  std::vector<LatticeVector> edge_slopes_;
  std::vector<LatticeVector> leg_slopes_;
};

struct ParamTropicalCurve {
  CombinatorialType type;
  std::vector<Rational> lengths;
  std::vector<RationalPoint> positions;

  // Throws InvalidArgument unless every length is positive and
  // position(head) - position(tail) = length * slope on every edge.
  void validate() const;
};

std::int64_t genus(const Graph& graph, std::span<const int> weights);
std::int64_t genus(const TropicalCurve& curve);
std::int64_t genus(const CombinatorialType& type);
bool is_stable(const TropicalCurve& curve);
bool check_balancing(const CombinatorialType& type);

struct DegreeReport {
  TropicalDegree degree;
  std::vector<LatticeVector> extended;  // all leg slopes in leg order
  std::size_t contracted = 0;
};
DegreeReport degree(const CombinatorialType& type);

// Collapses each component of the subgraph spanned by the given edges to a vertex of
// weight b1(component) + sum of weights.
CombinatorialType contract(const CombinatorialType& type, std::span<const std::size_t> edges);

// Legs are fixed pointwise; vertex and edge maps must respect weights and slopes.
BigInt automorphism_count(const CombinatorialType& type);

// Requires a weightless trivalent type; throws InvalidArgument otherwise.
BigInt mikhalkin_multiplicity(const CombinatorialType& type);

std::int64_t overvalency(const Graph& graph);
std::int64_t expected_dimension(const CombinatorialType& type, std::int64_t r);

enum class LegLabeling {
  Ordered,         // every leg labelled by its position in the leg order
  UnorderedEnds,   // contracted legs by order, other legs only by slope
};

// Complete isomorphism invariant: equal strings iff the types are isomorphic.
std::string canonical_form(const CombinatorialType& type, LegLabeling labeling = LegLabeling::Ordered);

// Short stable identifier (FNV-1a of the canonical form, hex).
std::string type_id(const std::string& canonical);

}  // namespace tropenum
