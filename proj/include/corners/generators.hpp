#pragma once

// Seeded random generators for self-checks: ordered corners spaces and
// subspace arrangements.

#include "corners/manybody.hpp"
#include "corners/poset.hpp"
#include "corners/space.hpp"

#include <algorithm>
#include <random>

namespace corners {

// Random ordered corners space with up to `max_hyps` hypersurfaces.  Each
// hypersurface sits below or above the interior; each side carries the
// intersection of two random linear orders; corners are a random family of
// chains (every maximal chain is kept with probability 1/2, and single
// hypersurfaces are always corners).
inline CornersSpace random_space(std::mt19937& rng, std::size_t max_hyps, const std::string& prefix,
                                 const Label& interior) {
  std::uniform_int_distribution<std::size_t> count(0, max_hyps);
  const std::size_t n = count(rng);
  std::vector<Label> lo, hi;
  for (std::size_t i = 0; i < n; ++i) (rng() % 2 ? hi : lo).push_back(prefix + std::to_string(i + 1));
  Relation r;
  auto side = [&](std::vector<Label> v) {
    std::vector<Label> p1 = v, p2 = v;
    std::shuffle(p1.begin(), p1.end(), rng);
    std::shuffle(p2.begin(), p2.end(), rng);
    auto pos = [](const std::vector<Label>& p, const Label& l) { return std::find(p.begin(), p.end(), l) - p.begin(); };
    for (const auto& a : v)
      for (const auto& b : v)
        if (a != b && pos(p1, a) < pos(p1, b) && pos(p2, a) < pos(p2, b)) r.emplace(a, b);
  };
  side(lo);
  side(hi);
  for (const auto& h : lo) r.emplace(h, interior);
  for (const auto& h : hi) r.emplace(interior, h);
  std::set<Label> hs(lo.begin(), lo.end());
  hs.insert(hi.begin(), hi.end());
  CornersSpace bare(interior, hs, r, {});
  std::vector<Label> elems(hs.begin(), hs.end());
  auto chains = maximal_chains(elems, [&](const Label& a, const Label& b) { return bare.less(a, b); });
  std::set<Simplex> corners;
  for (const auto& c : chains)
    if (rng() % 2) corners.insert(Simplex(c.begin(), c.end()));
  return CornersSpace(interior, hs, r, corners);
}

// Random k x n integer matrix with entries in [-2,2], 1 <= k <= max(1,n-1).
inline RationalMatrix random_rows(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> coef(-2, 2);
  const std::size_t k = 1 + rng() % std::max<std::size_t>(1, n - 1);
  RationalMatrix m(k, RationalVector(n));
  for (auto& r : m)
    for (auto& x : r) x = coef(rng);
  return m;
}

// Closure of up to `max_raw` random subspaces of Q^n, 1 <= n <= max_dim.
inline SubspaceArrangement random_arrangement(std::mt19937& rng, std::size_t max_dim, std::size_t max_raw) {
  const std::size_t n = 1 + rng() % max_dim;
  const std::size_t k = rng() % (max_raw + 1);
  std::vector<RationalMatrix> raw;
  for (std::size_t i = 0; i < k; ++i) raw.push_back(random_rows(rng, n));
  return close_arrangement(n, raw);
}

}  // namespace corners
