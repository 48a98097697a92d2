#include "tropenum/linear_algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace tropenum {

void RationalMatrix::append_row(std::span<const Rational> row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw std::invalid_argument("row width mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

RowEchelon row_reduce(RationalMatrix m) {
  RowEchelon out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && sgn(m.at(pivot, col)) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(pivot, c), m.at(row, c));
    }
    const Rational inv = 1 / m.at(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m.at(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || sgn(m.at(r, col)) == 0) continue;
      const Rational f = m.at(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (sgn(m.at(row, c)) != 0) m.at(r, c) -= f * m.at(row, c);
      }
    }
    out.pivot_columns.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const RationalMatrix& m) { return row_reduce(m).pivot_columns.size(); }

AffineSolution solve_affine(const RationalMatrix& a, std::span<const Rational> b) {
  if (b.size() != a.rows()) throw std::invalid_argument("rhs size mismatch");
  const std::size_t n = a.cols();
  RationalMatrix aug(a.rows(), n + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = a.at(r, c);
    aug.at(r, n) = b[r];
  }
  RowEchelon e = row_reduce(std::move(aug));
  AffineSolution sol;
  if (!e.pivot_columns.empty() && e.pivot_columns.back() == n) return sol;
  sol.consistent = true;
  sol.particular.assign(n, Rational(0));
  std::vector<bool> is_pivot(n, false);
  for (std::size_t i = 0; i < e.pivot_columns.size(); ++i) {
    is_pivot[e.pivot_columns[i]] = true;
    sol.particular[e.pivot_columns[i]] = e.reduced.at(i, n);
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(n, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivot_columns.size(); ++i) v[e.pivot_columns[i]] = -e.reduced.at(i, f);
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

namespace {

// Tableau simplex over rows [A | rhs]; basis[i] is the basic column of row i.
struct Tableau {
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  std::vector<std::size_t> basis;
  std::size_t cols = 0;

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / rows[r][c];
    for (auto& v : rows[r]) v *= inv;
    rhs[r] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      const Rational f = rows[i][c];
      for (std::size_t j = 0; j < cols; ++j) {
        if (sgn(rows[r][j]) != 0) rows[i][j] -= f * rows[r][j];
      }
      rhs[i] -= f * rhs[r];
    }
    basis[r] = c;
  }

  // Maximize obj over the current basis; columns with allowed[j] false never enter.
  LpStatus optimize(const std::vector<Rational>& obj, const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t enter = cols;
      for (std::size_t j = 0; j < cols && enter == cols; ++j) {
        if (!allowed[j]) continue;
        if (std::find(basis.begin(), basis.end(), j) != basis.end()) continue;
        Rational reduced = -obj[j];
        for (std::size_t i = 0; i < rows.size(); ++i) reduced += obj[basis[i]] * rows[i][j];
        if (sgn(reduced) < 0) enter = j;
      }
      if (enter == cols) return LpStatus::Optimal;
      std::size_t leave = rows.size();
      Rational best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (sgn(rows[i][enter]) <= 0) continue;
        Rational ratio = rhs[i] / rows[i][enter];
        if (leave == rows.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows.size()) return LpStatus::Unbounded;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult maximize(const RationalMatrix& a, std::span<const Rational> b, std::span<const Rational> c) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Tableau t;
  t.cols = n + m;
  t.rows.assign(m, std::vector<Rational>(n + m));
  t.rhs.assign(b.begin(), b.end());
  t.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const int sign = sgn(b[i]) < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) t.rows[i][j] = sign * a.at(i, j);
    t.rhs[i] *= sign;
    t.rows[i][n + i] = 1;
    t.basis[i] = n + i;
  }
  std::vector<Rational> phase1(n + m);
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = -1;
  std::vector<bool> all(n + m, true);
  t.optimize(phase1, all);
  LpResult result;
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis[i] >= n && sgn(t.rhs[i]) != 0) return result;
  }
  // Drive artificial columns out of the basis, dropping redundant rows.
  for (std::size_t i = 0; i < t.rows.size();) {
    if (t.basis[i] < n) {
      ++i;
      continue;
    }
    std::size_t j = 0;
    while (j < n && sgn(t.rows[i][j]) == 0) ++j;
    if (j < n) {
      t.pivot(i, j);
      ++i;
    } else {
      t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
      t.rhs.erase(t.rhs.begin() + static_cast<std::ptrdiff_t>(i));
      t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }
  std::vector<Rational> obj(n + m);
  for (std::size_t j = 0; j < n; ++j) obj[j] = c[j];
  std::vector<bool> allowed(n + m, false);
  std::fill(allowed.begin(), allowed.begin() + static_cast<std::ptrdiff_t>(n), true);
  result.status = t.optimize(obj, allowed);
  result.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < t.rows.size(); ++i) result.x[t.basis[i]] = t.rhs[i];
  result.value = 0;
  for (std::size_t j = 0; j < n; ++j) result.value += c[j] * result.x[j];
  return result;
}

bool feasible(const RationalMatrix& a, std::span<const Rational> b,
              std::span<const std::optional<Rational>> lower) {
  // x_j = lower_j + y_j for bounded coordinates, x_j = y+ - y- for free ones.
  const std::size_t n = a.cols();
  std::vector<std::size_t> first(n);
  std::size_t width = 0;
  for (std::size_t j = 0; j < n; ++j) {
    first[j] = width;
    width += lower[j] ? 1 : 2;
  }
  RationalMatrix std_a(a.rows(), width);
  std::vector<Rational> std_b(b.begin(), b.end());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& v = a.at(i, j);
      if (sgn(v) == 0) continue;
      std_a.at(i, first[j]) = v;
      if (lower[j]) {
        std_b[i] -= v * *lower[j];
      } else {
        std_a.at(i, first[j] + 1) = -v;
      }
    }
  }
  std::vector<Rational> zero(width);
  return maximize(std_a, std_b, zero).status != LpStatus::Infeasible;
}

bool strictly_feasible(const RationalMatrix& a, std::span<const Rational> b, std::span<const std::size_t> strict) {
  // maximize tau subject to x_j - tau - s_j = 0 (j strict), tau <= 1.
  const std::size_t n = a.cols();
  const std::size_t k = strict.size();
  std::vector<bool> is_strict(n, false);
  for (auto j : strict) is_strict[j] = true;
  std::vector<std::size_t> first(n);
  std::size_t width = 0;
  for (std::size_t j = 0; j < n; ++j) {
    first[j] = width;
    width += is_strict[j] ? 1 : 2;
  }
  const std::size_t tau = width;
  const std::size_t slack0 = tau + 1;
  const std::size_t cap = slack0 + k;
  const std::size_t total = cap + 1;
  RationalMatrix m(a.rows() + k + 1, total);
  std::vector<Rational> rhs(a.rows() + k + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& v = a.at(i, j);
      if (sgn(v) == 0) continue;
      m.at(i, first[j]) = v;
      if (!is_strict[j]) m.at(i, first[j] + 1) = -v;
    }
    rhs[i] = b[i];
  }
  for (std::size_t s = 0; s < k; ++s) {
    const std::size_t row = a.rows() + s;
    m.at(row, first[strict[s]]) = 1;
    m.at(row, tau) = -1;
    m.at(row, slack0 + s) = -1;
  }
  m.at(a.rows() + k, tau) = 1;
  m.at(a.rows() + k, cap) = 1;
  rhs[a.rows() + k] = 1;
  std::vector<Rational> c(total);
  c[tau] = 1;
  const LpResult r = maximize(m, rhs, c);
  return r.status == LpStatus::Optimal && sgn(r.value) > 0;
}

}  // namespace tropenum
