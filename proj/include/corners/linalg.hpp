#pragma once

// Exact linear algebra over the rationals: row reduction, rank, unique
// solutions, null spaces and integer determinants.

#include "corners/arith.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace corners {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

struct RowEchelon {
  RationalMatrix rows;              // nonzero rows of the reduced echelon form
  std::vector<std::size_t> pivots;  // pivot column of each row
};

// Reduced row echelon form of a matrix with `cols` columns.
inline RowEchelon rref(RationalMatrix m, std::size_t cols) {
  RowEchelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

inline std::size_t rank(const RationalMatrix& m, std::size_t cols) {
  return rref(m, cols).pivots.size();
}

// Solves a x = b where `a` has `cols` columns.  Returns nullopt when the
// system is inconsistent; throws when the solution is not unique.
inline std::optional<RationalVector> solve_unique(const RationalMatrix& a, const RationalVector& b,
                                                  std::size_t cols) {
  RationalMatrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  RowEchelon e = rref(std::move(aug), cols + 1);
  if (!e.pivots.empty() && e.pivots.back() == cols) return std::nullopt;
  if (e.pivots.size() != cols) throw DomainError("linear system has dependent columns");
  RationalVector x(cols);
  for (std::size_t i = 0; i < e.rows.size(); ++i) x[e.pivots[i]] = e.rows[i][cols];
  return x;
}

// Basis of {x : m x = 0}.
inline RationalMatrix nullspace(const RationalMatrix& m, std::size_t cols) {
  RowEchelon e = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  RationalMatrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = -e.rows[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Bareiss fraction-free elimination.
inline Integer determinant(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace corners
