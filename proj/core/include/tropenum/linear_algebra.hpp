#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tropenum/rational.hpp"

namespace tropenum {

// Dense row-major matrix over Q.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void append_row(std::span<const Rational> row);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

// Reduced row echelon form; pivots chosen as the first nonzero entry of each column.
struct RowEchelon {
  RationalMatrix reduced;
  std::vector<std::size_t> pivot_columns;
};

RowEchelon row_reduce(RationalMatrix m);
std::size_t rank(const RationalMatrix& m);

// Solution set of A x = b as particular + span(kernel).
struct AffineSolution {
  bool consistent = false;
  std::vector<Rational> particular;
  std::vector<std::vector<Rational>> kernel;
  std::size_t dimension() const { return kernel.size(); }
};

AffineSolution solve_affine(const RationalMatrix& a, std::span<const Rational> b);

enum class LpStatus { Infeasible, Optimal, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> x;
};

// maximize c.x subject to A x = b, x >= 0. Exact two-phase simplex with Bland's rule.
LpResult maximize(const RationalMatrix& a, std::span<const Rational> b, std::span<const Rational> c);

// Is there x with A x = b and x_j >= lower_j for every j where lower_j is set?
// Coordinates without a bound are free.
bool feasible(const RationalMatrix& a, std::span<const Rational> b,
              std::span<const std::optional<Rational>> lower);

// Is there x with A x = b and x_j > 0 for every j in strict (others free)?
bool strictly_feasible(const RationalMatrix& a, std::span<const Rational> b, std::span<const std::size_t> strict);

}  // namespace tropenum
