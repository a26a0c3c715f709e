#pragma once

// Linear systems of subspaces and their many-body compactifications, as
// interior-minimal ordered corners spaces.

#include "corners/linalg.hpp"
#include "corners/poset.hpp"
#include "corners/products.hpp"
#include "corners/space.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace corners {

// A subspace of Q^n, stored as the nonzero rows of its reduced row echelon
// form.
class Subspace {
 public:
  Subspace() = default;
  Subspace(const RationalMatrix& rows, std::size_t ambient) : n_(ambient) {
    for (const auto& r : rows)
      if (r.size() != ambient) throw InputError("subspace row has " + std::to_string(r.size()) +
                                                " entries, expected " + std::to_string(ambient));
    rows_ = rref(rows, ambient).rows;
  }

  static Subspace zero(std::size_t n) { return Subspace({}, n); }
  static Subspace full(std::size_t n) {
    RationalMatrix id(n, RationalVector(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
    return Subspace(id, n);
  }

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return rows_.size(); }
  const RationalMatrix& rows() const { return rows_; }

  // "0" for the zero subspace, otherwise the echelon rows.
  Label label() const {
    if (rows_.empty()) return "0";
    std::string s = "<";
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i) s += ";";
      for (std::size_t j = 0; j < n_; ++j) s += (j ? "," : "") + to_string(rows_[i][j]);
    }
    return s + ">";
  }

  bool contains(const Subspace& t) const {
    RationalMatrix m = rows_;
    m.insert(m.end(), t.rows_.begin(), t.rows_.end());
    return rank(m, n_) == dim();
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.n_ == b.n_ && a.rows_ == b.rows_; }
  friend bool operator<(const Subspace& a, const Subspace& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.label() < b.label();
  }

 private:
  std::size_t n_ = 0;
  RationalMatrix rows_;
};

inline Subspace sum(const Subspace& a, const Subspace& b) {
  RationalMatrix m = a.rows();
  m.insert(m.end(), b.rows().begin(), b.rows().end());
  return Subspace(m, a.ambient());
}

// Rows spanning the annihilator.
inline RationalMatrix annihilator(const Subspace& a) { return nullspace(a.rows(), a.ambient()); }

inline Subspace intersect(const Subspace& a, const Subspace& b) {
  RationalMatrix m = annihilator(a);
  auto nb = annihilator(b);
  m.insert(m.end(), nb.begin(), nb.end());
  return Subspace(nullspace(m, a.ambient()), a.ambient());
}

// S (+) T inside V x W.
inline Subspace direct_sum(const Subspace& s, const Subspace& t) {
  const std::size_t n = s.ambient() + t.ambient();
  RationalMatrix m;
  for (const auto& r : s.rows()) {
    RationalVector v(n, Rational(0));
    std::copy(r.begin(), r.end(), v.begin());
    m.push_back(std::move(v));
  }
  for (const auto& r : t.rows()) {
    RationalVector v(n, Rational(0));
    std::copy(r.begin(), r.end(), v.begin() + static_cast<std::ptrdiff_t>(s.ambient()));
    m.push_back(std::move(v));
  }
  return Subspace(m, n);
}

struct SubspaceArrangement {
  std::size_t ambient_dim = 0;
  std::vector<Subspace> subspaces;  // sorted by dimension, then label

  const Subspace* find(const Label& l) const {
    for (const auto& s : subspaces)
      if (s.label() == l) return &s;
    return nullptr;
  }
  bool contains(const Subspace& s) const {
    return std::find(subspaces.begin(), subspaces.end(), s) != subspaces.end();
  }
};

// Smallest intersection-closed family containing the given subspaces, 0 and
// the ambient space.
inline SubspaceArrangement close_arrangement(std::size_t n, const std::vector<RationalMatrix>& raw) {
  std::set<Subspace> all{Subspace::zero(n), Subspace::full(n)};
  for (const auto& m : raw) all.insert(Subspace(m, n));
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Subspace> cur(all.begin(), all.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j)
        if (all.insert(intersect(cur[i], cur[j])).second) grew = true;
  }
  SubspaceArrangement a{n, {all.begin(), all.end()}};
  for (std::size_t i = 0; i < a.subspaces.size(); ++i)
    for (std::size_t j = i + 1; j < a.subspaces.size(); ++j)
      if (!a.contains(intersect(a.subspaces[i], a.subspaces[j])))
        throw std::logic_error("arrangement closure is not intersection-closed");
  return a;
}

// Coordinates on V/S: one per non-pivot column j of the echelon form of S,
// v -> v_j - sum_i S_ij v_{p_i}.  Vanishes exactly on S.
inline RationalVector quotient_coordinates(const Subspace& s, const RationalVector& v) {
  const auto e = rref(s.rows(), s.ambient());
  std::vector<bool> pivot(s.ambient(), false);
  for (auto p : e.pivots) pivot[p] = true;
  RationalVector out;
  for (std::size_t j = 0; j < s.ambient(); ++j) {
    if (pivot[j]) continue;
    Rational x = v[j];
    for (std::size_t i = 0; i < e.rows.size(); ++i) x -= e.rows[i][j] * v[e.pivots[i]];
    out.push_back(x);
  }
  return out;
}

// The induced system on V/S: the images S'/S of the members containing S.
inline SubspaceArrangement quotient_arrangement(const SubspaceArrangement& a, const Subspace& s) {
  if (!a.contains(s)) throw InputError("subspace " + s.label() + " is not in the arrangement");
  const std::size_t q = a.ambient_dim - s.dim();
  std::vector<RationalMatrix> images;
  for (const auto& t : a.subspaces) {
    if (!t.contains(s)) continue;
    RationalMatrix m;
    for (const auto& r : t.rows()) m.push_back(quotient_coordinates(s, r));
    images.push_back(std::move(m));
  }
  return close_arrangement(q, images);
}

struct ManyBodySpace {
  struct Fibration {
    SubspaceArrangement fiber;  // the system on V/S; the fiber is its many-body space
    std::set<Label> base_index;  // nonzero S' strictly inside S
    std::set<Label> fiber_index;  // S' strictly containing S
  };
  CornersSpace space;
  std::map<Label, Subspace> subspace;  // hypersurface -> S
  std::map<Label, Fibration> fibrations;
};

// Hypersurfaces are the nonzero members, ordered by inclusion, with the
// interior indexed by 0; corners are the inclusion chains.
inline ManyBodySpace mb_space(const SubspaceArrangement& a) {
  ManyBodySpace out;
  std::vector<Subspace> proper;
  for (const auto& s : a.subspaces)
    if (s.dim() > 0) proper.push_back(s);
  auto strict = [](const Subspace& x, const Subspace& y) { return !(x == y) && y.contains(x); };
  std::set<Label> hyps;
  Relation order;
  for (const auto& s : proper) {
    hyps.insert(s.label());
    out.subspace.emplace(s.label(), s);
    order.emplace("0", s.label());
    for (const auto& t : proper)
      if (strict(s, t)) order.emplace(s.label(), t.label());
  }
  std::set<Simplex> corners;
  for (const auto& c : maximal_chains(proper, strict)) {
    Simplex x;
    for (const auto& s : c) x.insert(s.label());
    corners.insert(std::move(x));
  }
  out.space = CornersSpace("0", hyps, order, corners);
  for (const auto& s : proper) {
    ManyBodySpace::Fibration f{quotient_arrangement(a, s), {}, {}};
    for (const auto& t : proper) {
      if (strict(t, s)) f.base_index.insert(t.label());
      if (strict(s, t)) f.fiber_index.insert(t.label());
    }
    out.fibrations.emplace(s.label(), std::move(f));
  }
  return out;
}

struct MbProductCheck {
  bool iso = false;
  std::map<Label, Label> witness;  // S (+) T -> (S,T)
  std::size_t hypersurfaces = 0;
  std::vector<std::string> problems;
};

// Compares the many-body space of {S (+) T} with the ordered product of the
// factors' many-body spaces under S (+) T <-> (S,T).
inline MbProductCheck mb_product_check(const SubspaceArrangement& av, const SubspaceArrangement& aw) {
  MbProductCheck out;
  std::vector<RationalMatrix> raw;
  for (const auto& s : av.subspaces)
    for (const auto& t : aw.subspaces) {
      auto d = direct_sum(s, t);
      raw.push_back(d.rows());
      out.witness.emplace(d.label(), pair_name(s.label(), t.label()));
    }
  out.witness.erase("0");
  auto prod_arr = close_arrangement(av.ambient_dim + aw.ambient_dim, raw);
  if (prod_arr.subspaces.size() != av.subspaces.size() * aw.subspaces.size())
    out.problems.push_back("product system is not closed under intersection");
  auto mvw = mb_space(prod_arr);
  auto prod = product_space(mb_space(av).space, mb_space(aw).space);
  out.hypersurfaces = mvw.space.hypersurfaces().size();

  std::set<Label> image;
  for (const auto& h : mvw.space.hypersurfaces()) {
    auto it = out.witness.find(h);
    if (it == out.witness.end()) {
      out.problems.push_back("hypersurface " + h + " is not a direct sum");
      continue;
    }
    image.insert(it->second);
  }
  if (image != prod.space.hypersurfaces()) out.problems.push_back("witness is not a bijection onto the product");
  if (out.problems.empty()) {
    for (const auto& a : mvw.space.hypersurfaces())
      for (const auto& b : mvw.space.hypersurfaces())
        if (mvw.space.less(a, b) != prod.space.less(out.witness.at(a), out.witness.at(b)))
          out.problems.push_back("order differs at " + a + ", " + b);
    std::set<Simplex> mapped;
    for (const auto& s : mvw.space.max_simplices()) {
      Simplex t;
      for (const auto& l : s) t.insert(out.witness.at(l));
      mapped.insert(std::move(t));
    }
    if (mapped != prod.space.max_simplices()) out.problems.push_back("corners differ");
  }
  out.iso = out.problems.empty();
  return out;
}

}  // namespace corners
