#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tropenum/lattice_geometry.hpp"
#include "tropenum/moduli_strata.hpp"
#include "tropenum/tropical_graphs.hpp"

namespace tropenum {

struct CountRequest {
  LatticePolygon polygon;
  std::int64_t genus = 0;
  bool irreducible_only = false;
  std::uint64_t seed = 0;
  // Count one leg ordering per orbit of permutations of equal-slope ends. When false the
  // total counts ordered ends, i.e. it is multiplied by prod k_i!.
  bool divide_unordered_legs = true;
  int max_attempts = 8;
  // 0 means hardware concurrency, capped by TROPENUM_THREADS when set.
  unsigned threads = 0;
};

struct TypeCount {
  std::string type_id;
  std::string canonical;
  BigInt multiplicity;
  std::int64_t solutions = 0;
  std::size_t components = 1;
  ParamTropicalCurve curve;  // the certified solution
};

struct CountReport {
  BigInt total;
  std::vector<TypeCount> per_type;  // sorted by canonical form
  PointConfiguration configuration;
  int resample_attempts = 0;
  std::string convention;
  std::int64_t genus = 0;
  bool irreducible_only = false;
  std::uint64_t explored = 0;  // search nodes visited, for diagnostics
};

// Curves of the polygon's dual degree and the requested genus through r = |boundary| + g - 1
// sampled points, with Mikhalkin multiplicities. Every curve found is re-solved from its
// combinatorial type and must come back unique with positive lengths; otherwise the points
// are resampled. Throws InvalidArgument when r < 0 and GenericityExhausted after
// max_attempts failed configurations.
CountReport count_curves(const CountRequest& request);

std::string report_to_json(const CountReport& report, int indent = 2);

// Weightless trivalent types of the given degree and genus with r contracted legs (in
// leg order, placed inside edges and ends), no contracted edges, edge slopes in the
// admissible set of the dual polygon and a nonempty open stratum. Each isomorphism class
// (ends unordered within a slope) is reported once. Returns the number reported.
std::size_t generate_types(const TropicalDegree& degree, std::int64_t genus, std::size_t r, bool connected,
                           const std::function<void(const CombinatorialType&)>& visit);

// Drops contracted legs and smooths the 2-valent vertices this leaves behind.
CombinatorialType forget_marks(const CombinatorialType& type);

struct AuditReport {
  std::int64_t r = 0;  // |boundary| + g point conditions
  std::size_t types_checked = 0;
  std::size_t contractions_checked = 0;
  std::int64_t max_dimension = 0;        // largest stratum dimension with the r marks included
  std::int64_t max_image_dimension = 0;  // same for the family of images plus marks
  std::size_t superabundant = 0;         // strata whose raw dimension alone reaches 2r
  std::vector<std::string> violations;
  bool passed() const { return violations.empty(); }
};

// Over all generated unmarked types and their single-edge contractions: the stratum has at
// least the expected dimension, and after placing r = |boundary| + g marks inside edges
// (each adds one dimension) the family of images with marks stays below 2r, so no curve
// passes through r general points. The image family is the stratum itself unless the
// raw dimension reaches 2r; that happens only for non-immersed types with flat vertices
// (all slopes on one line), whose extra parameters slide such vertices along a fixed
// segment, and then the image family is measured through the non-flat vertex positions.
AuditReport dimension_bound_audit(const LatticePolygon& polygon, std::int64_t genus);

}  // namespace tropenum
