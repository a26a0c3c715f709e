#pragma once

// Feasibility of small linear systems over the rationals by equality
// substitution followed by Fourier-Motzkin elimination.

#include "corners/linalg.hpp"

#include <set>

namespace corners {

struct LinearSystem {
  std::size_t vars = 0;
  // Each row is (a, b): a.x <= b for inequalities, a.x == b for equalities.
  std::vector<std::pair<RationalVector, Rational>> inequalities;
  std::vector<std::pair<RationalVector, Rational>> equalities;

  void add_le(RationalVector a, Rational b) { inequalities.emplace_back(std::move(a), std::move(b)); }
  void add_eq(RationalVector a, Rational b) { equalities.emplace_back(std::move(a), std::move(b)); }
};

namespace detail {

// Scale so the largest absolute coefficient is one; keeps the row set small
// enough to deduplicate.
inline void normalize_row(std::pair<RationalVector, Rational>& row) {
  Rational m = 0;
  for (const auto& x : row.first) m = std::max(m, x < 0 ? Rational(-x) : x);
  if (m == 0) return;
  for (auto& x : row.first) x /= m;
  row.second /= m;
}

}  // namespace detail

inline bool feasible(LinearSystem sys) {
  auto& ineq = sys.inequalities;
  auto& eq = sys.equalities;
  const std::size_t n = sys.vars;

  // Use each equality to eliminate one variable everywhere else.
  for (std::size_t e = 0; e < eq.size(); ++e) {
    auto [a, b] = eq[e];
    std::size_t v = 0;
    while (v < n && a[v] == 0) ++v;
    if (v == n) {
      if (b != 0) return false;
      continue;
    }
    auto substitute = [&](std::pair<RationalVector, Rational>& row) {
      if (row.first[v] == 0) return;
      Rational f = row.first[v] / a[v];
      for (std::size_t j = 0; j < n; ++j) row.first[j] -= f * a[j];
      row.second -= f * b;
    };
    for (std::size_t o = e + 1; o < eq.size(); ++o) substitute(eq[o]);
    for (auto& row : ineq) substitute(row);
  }

  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::pair<RationalVector, Rational>> pos, neg;
    std::set<std::pair<RationalVector, Rational>> next;
    for (auto& row : ineq) {
      if (row.first[v] > 0)
        pos.push_back(row);
      else if (row.first[v] < 0)
        neg.push_back(row);
      else
        next.insert(row);
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        Rational fp = 1 / p.first[v], fq = -1 / q.first[v];
        std::pair<RationalVector, Rational> row{RationalVector(n), p.second * fp + q.second * fq};
        for (std::size_t j = 0; j < n; ++j) row.first[j] = p.first[j] * fp + q.first[j] * fq;
        row.first[v] = 0;
        detail::normalize_row(row);
        next.insert(std::move(row));
      }
    }
    ineq.assign(next.begin(), next.end());
  }
  for (const auto& row : ineq)
    if (row.second < 0) return false;
  return true;
}

}  // namespace corners
