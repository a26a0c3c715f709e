#pragma once

// Shared helpers for the test suites: terse vector/cone literals, random
// space generators, and independent brute-force oracles.

#include "corners/bmaps.hpp"
#include "corners/generators.hpp"

#include <random>
#include <sstream>

namespace corners::testing {

// "h1+h2+2*h3", "h1-h2"; "0" is the zero vector.
inline MonoidVector vec(const std::string& expr) {
  MonoidVector v;
  if (expr == "0") return v;
  std::size_t i = 0;
  while (i < expr.size()) {
    Integer sign = 1;
    if (expr[i] == '+' || expr[i] == '-') {
      if (expr[i] == '-') sign = -1;
      ++i;
    }
    std::size_t j = i;
    while (j < expr.size() && expr[j] != '+' && expr[j] != '-') ++j;
    std::string term = expr.substr(i, j - i);
    Integer k = 1;
    auto star = term.find('*');
    if (star != std::string::npos) {
      k = Integer(term.substr(0, star).c_str());
      term = term.substr(star + 1);
    }
    v += (sign * k) * MonoidVector::unit(term);
    i = j;
  }
  return v;
}

inline Cone cone(std::initializer_list<const char*> gens) {
  std::vector<MonoidVector> g;
  for (auto s : gens) g.push_back(vec(s));
  return Cone(std::move(g));
}

inline std::set<Label> labels(std::initializer_list<const char*> ls) { return {ls.begin(), ls.end()}; }

// Oracle for kernel_face_check: a nonnegative not-all-zero combination of
// the non-kernel generators pairing to zero exists iff some basic solution
// exists, i.e. some subset of columns of [pairings; 1] solves the system
// uniquely with nonnegative coefficients.  Enumerates all subsets.
inline bool kernel_face_oracle(const Cone& c, const std::vector<MonoidVector>& fs) {
  std::vector<std::vector<Integer>> cols;
  for (const auto& g : c.generators()) {
    std::vector<Integer> p;
    bool zero = true;
    for (const auto& f : fs) {
      p.push_back(pairing(f, g));
      zero = zero && p.back() == 0;
    }
    if (!zero) cols.push_back(p);
  }
  const std::size_t n = cols.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) idx.push_back(i);
    RationalMatrix a;
    RationalVector b;
    for (std::size_t j = 0; j < fs.size(); ++j) {
      RationalVector row;
      for (auto i : idx) row.emplace_back(cols[i][j]);
      a.push_back(row);
      b.emplace_back(0);
    }
    a.push_back(RationalVector(idx.size(), Rational(1)));
    b.emplace_back(1);
    if (rank(a, idx.size()) != idx.size()) continue;
    auto x = solve_unique(a, b, idx.size());
    if (x && std::all_of(x->begin(), x->end(), [](const Rational& q) { return q >= 0; })) return false;
  }
  return true;
}

// A chain space H1 < ... < Hn with the interior at position `interior_at`
// (0 = below everything, n = above everything) and the full simplex as
// the only maximal corner.
inline CornersSpace chain_space(const std::vector<Label>& hs, std::size_t interior_at, const Label& interior = "X") {
  std::vector<Label> all = hs;
  all.insert(all.begin() + interior_at, interior);
  Relation r;
  for (std::size_t i = 0; i + 1 < all.size(); ++i) r.emplace(all[i], all[i + 1]);
  return CornersSpace(interior, {hs.begin(), hs.end()}, r, {Simplex(hs.begin(), hs.end())});
}

// Half-line [0,inf) with boundary hypersurface `h`, interior minimal or
// maximal.
inline CornersSpace half_line(const Label& h, bool interior_min, const Label& interior = "X") {
  return chain_space({h}, interior_min ? 0 : 1, interior);
}

inline CornersSpace point(const Label& interior = "pt") { return CornersSpace(interior, {}, {}, {}); }

// Brute-force oracle: all pairs comparable to the base point except the
// base point itself.
inline std::set<Label> brute_force_rays(const CornersSpace& x, const CornersSpace& y) {
  std::set<Label> out;
  for (const auto& a : x.labels())
    for (const auto& b : y.labels()) {
      if (a == x.interior() && b == y.interior()) continue;
      bool below = (a == x.interior() || x.less(a, x.interior())) && (b == y.interior() || y.less(b, y.interior()));
      bool above = (a == x.interior() || x.less(x.interior(), a)) && (b == y.interior() || y.less(y.interior(), b));
      if (below || above) out.insert("(" + a + "," + b + ")");
    }
  return out;
}

// Random ordered (simple, b-normal, order-preserving, corner-respecting)
// map, by rejection sampling; nullopt after too many attempts.
inline std::optional<BMap> random_morphism(std::mt19937& rng, const CornersSpace& z, const CornersSpace& x) {
  std::vector<Label> targets(x.hypersurfaces().begin(), x.hypersurfaces().end());
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::map<Label, MonoidVector> cols;
    for (const auto& e : z.hypersurfaces()) {
      auto k = rng() % (targets.size() + 1);
      if (k < targets.size()) cols.emplace(e, MonoidVector::unit(targets[k]));
    }
    BMap f(z, x, cols);
    auto c = classify(f);
    if (c.simple && c.b_normal && c.ordered && f.corner_image_violations().empty()) return f;
  }
  return std::nullopt;
}

}  // namespace corners::testing
