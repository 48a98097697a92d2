#pragma once

// Point-guided search for plane tropical curves through fixed points.
//
// For points in general position every component of the curve minus its marked points
// is a tree with exactly one end. Cutting the curve at a mark q therefore splits it into
// pieces of two kinds, described by (marks M, ends E, pins P):
//   pointed: hangs off a known point p, |M| = |E| - 1; its first edge leaves p with
//            slope S = sum(E) + sum(P) and the piece is determined by p.
//   rigid:   |M| = |E|; the piece is determined by its own marks and ends, and
//            reaches back towards the rest of the curve along a dangling ray of
//            direction -S from its root.
// A pointed piece is an end, or its first vertex joins a rigid piece and a smaller
// pointed piece. A rigid piece is rooted at one of its marks, or is two rigid pieces
// whose dangling rays meet. Rigid pieces do not depend on anything outside themselves
// and are memoized. Positive genus is handled by cutting a mark on each cycle; the two
// halves of such a cut become "pins": rigid atoms sitting at the mark with a guessed
// direction.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tropenum/rational.hpp"
#include "tropenum/tropical_graphs.hpp"

namespace tropenum::detail {

// Exact point (x / d, y / d) with d > 0 and gcd(x, y, d) = 1. The search only meets
// lines with small lattice directions, so 64-bit fields suffice in practice; arithmetic
// runs in 128 bits and throws std::overflow_error when a result does not fit.
struct FixedPoint {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t d = 1;

  static FixedPoint from(const RationalPoint& p);
  RationalPoint to_rational() const;
  friend bool operator==(const FixedPoint&, const FixedPoint&) = default;
};

struct Pin {
  std::size_t mark = 0;
  LatticeVector inward;  // direction from the mark into the curve
};

// Embedded curve before leg ordering is fixed.
struct CurveSketch {
  struct Leg {
    std::size_t anchor = 0;
    LatticeVector slope;
    std::int64_t mark = -1;  // global mark id for contracted legs
  };
  std::vector<RationalPoint> positions;
  std::vector<GraphEdge> edges;
  std::vector<LatticeVector> slopes;
  std::vector<Leg> legs;
  std::uint64_t multiplicity = 1;

  std::string signature() const;
};

// Orders contracted legs by mark id and ends by (slope, anchor position); lengths are
// recovered from positions.
ParamTropicalCurve assemble(std::span<const CurveSketch* const> pieces);

class CurveSearch {
 public:
  CurveSearch(std::vector<RationalPoint> marks, std::vector<LatticeVector> directions, std::vector<int> full_counts,
              const std::vector<LatticeVector>& admissible);
  ~CurveSearch();

  // Connected curves through the marks in `marks` (bit i = global mark i) with ends
  // counts[k] of directions[k]; pins cut marks, which must also be listed in `marks`.
  // Throws DegenerateConfiguration when a completed curve has a zero-length edge.
  std::vector<CurveSketch> connected(std::uint64_t marks, std::span<const int> counts, std::span<const Pin> pins);

  // Curves with a cycle that runs straight through the mark `cut` in direction `u` (give u
  // in one half-plane: the reverse direction describes the same curve), one list per entry
  // of mark_sets; sets without the cut get an empty list. Sharing the call lets the sets
  // share partial pieces. Further cycles are cut at `pins` as in connected(). With
  // lowest_cut set, curves with a mark below `cut` on that cycle are skipped, so each curve
  // is found from exactly one cut. Edges on that cycle must have slopes in cycle_slopes
  // unless it is empty.
  std::vector<std::vector<CurveSketch>> through_cut(std::span<const std::uint64_t> mark_sets,
                                                    std::span<const int> counts, std::size_t cut,
                                                    const LatticeVector& u, std::span<const Pin> pins,
                                                    bool lowest_cut, std::span<const LatticeVector> cycle_slopes);

  std::uint64_t explored() const { return explored_; }

  struct Node;
  using NodePtr = std::shared_ptr<const Node>;
  using List = std::vector<NodePtr>;

 private:
  struct Key {
    std::uint64_t marks;
    std::uint32_t ends;
    std::uint32_t pins;
    std::int64_t origin;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };

  std::uint32_t encode(std::span<const int> counts) const;
  LatticeVector sum(std::uint32_t ends, std::uint32_t pins) const;
  bool admissible(const LatticeVector& v) const;
  // Pieces holding pin 0 hang off the cut cycle, so their slope is a cycle edge slope.
  bool cycle_fits(const LatticeVector& v, std::uint32_t pins) const;
  std::vector<char> slope_table(std::span<const LatticeVector> slopes) const;
  const std::vector<std::vector<std::uint32_t>>& subs_by_size(std::uint32_t ends);

  const List& rigid(std::uint64_t m, std::uint32_t e, std::uint32_t p);
  const List& pointed_from_mark(std::size_t q, std::uint64_t m, std::uint32_t e, std::uint32_t p);
  List pointed(const FixedPoint& origin, std::uint64_t m, std::uint32_t e, std::uint32_t p);

  std::vector<RationalPoint> marks_;
  std::vector<FixedPoint> fixed_marks_;
  std::vector<LatticeVector> directions_;
  std::vector<int> full_;
  std::vector<std::uint32_t> stride_;
  std::vector<int> size_of_;
  std::vector<LatticeVector> sum_of_;
  std::int64_t reach_ = 0;        // admissible slopes lie in [-reach_, reach_]^2
  std::vector<char> admissible_;  // row-major table over that square
  std::unordered_map<std::uint32_t, std::vector<std::vector<std::uint32_t>>> subs_;

  std::vector<Pin> pins_;
  std::int64_t cycle_cut_ = -1;
  std::vector<char> cycle_ok_;  // same layout as admissible_; empty means unrestricted  // pin 0 cuts this mark's cycle; marks below it may not lie on it
  std::unordered_map<Key, List, KeyHash> memo_;      // pin-free entries, reused across calls
  std::unordered_map<Key, List, KeyHash> pin_memo_;  // cleared per call
  std::uint64_t explored_ = 0;
};

}  // namespace tropenum::detail
