#pragma once

// Manifolds with ordered corners as combinatorial data (hypersurfaces, a
// partial order with a distinguished interior element, and the complex of
// corners), together with blown-up states given by one fan per maximal
// corner.

#include "corners/monoid_fan.hpp"
#include "corners/poset.hpp"

#include <optional>

namespace corners {

using Simplex = std::set<Label>;

class CornersSpace {
 public:
  CornersSpace() = default;

  // `order` is any generating set of strict relations a < b over
  // hypersurfaces and the interior; it is closed transitively here.
  // `corners` lists simplices; subsets are implied and every hypersurface is
  // a corner of itself.
  CornersSpace(Label interior, std::set<Label> hypersurfaces, const Relation& order,
               const std::set<Simplex>& corners)
      : interior_(std::move(interior)), hyps_(std::move(hypersurfaces)) {
    if (hyps_.count(interior_)) throw InputError("interior label '" + interior_ + "' is also a hypersurface");
    for (const auto& [a, b] : order) {
      if (!is_label(a) || !is_label(b)) throw InputError("order relation mentions unknown label '" + (is_label(a) ? b : a) + "'");
      if (a == b) throw InputError("order relation '" + a + " < " + a + "' is reflexive");
    }
    order_ = transitive_closure(order);
    for (const auto& [a, b] : order_)
      if (a == b) throw InputError("order relation has a cycle through '" + a + "'");
    std::set<Simplex> all = corners;
    for (const auto& h : hyps_) all.insert({h});
    for (const auto& s : all)
      for (const auto& l : s)
        if (!hyps_.count(l)) throw InputError("corner mentions unknown hypersurface '" + l + "'");
    for (const auto& s : all) {
      bool maximal = std::none_of(all.begin(), all.end(), [&](const Simplex& o) {
        return o.size() > s.size() && std::includes(o.begin(), o.end(), s.begin(), s.end());
      });
      if (maximal) max_.insert(s);
    }
  }

  const Label& interior() const { return interior_; }
  const std::set<Label>& hypersurfaces() const { return hyps_; }
  const Relation& order() const { return order_; }
  const std::set<Simplex>& max_simplices() const { return max_; }
  // Maximal corners, with the empty corner standing in when there are none.
  std::set<Simplex> corner_cells() const { return max_.empty() ? std::set<Simplex>{Simplex{}} : max_; }

  bool is_label(const Label& l) const { return l == interior_ || hyps_.count(l) > 0; }
  std::set<Label> labels() const {
    auto s = hyps_;
    s.insert(interior_);
    return s;
  }
  bool less(const Label& a, const Label& b) const { return order_.count({a, b}) > 0; }
  bool leq(const Label& a, const Label& b) const { return a == b || less(a, b); }
  bool comparable(const Label& a, const Label& b) const { return leq(a, b) || less(b, a); }

  bool has_simplex(const Simplex& s) const {
    if (s.empty()) return true;
    return std::any_of(max_.begin(), max_.end(),
                       [&](const Simplex& m) { return std::includes(m.begin(), m.end(), s.begin(), s.end()); });
  }
  bool incident(const Label& a, const Label& b) const { return has_simplex({a, b}); }

  // Every simplex, including the empty one.
  std::set<Simplex> all_simplices() const {
    std::set<Simplex> out;
    for (const auto& m : max_) {
      std::vector<Label> v(m.begin(), m.end());
      for (std::size_t mask = 0; mask < (std::size_t{1} << v.size()); ++mask) {
        Simplex s;
        for (std::size_t i = 0; i < v.size(); ++i)
          if (mask >> i & 1) s.insert(v[i]);
        out.insert(std::move(s));
      }
    }
    out.insert(Simplex{});
    return out;
  }

  // Hypersurfaces below / above the interior.
  std::vector<Label> below() const {
    std::vector<Label> out;
    for (const auto& h : hyps_)
      if (less(h, interior_)) out.push_back(h);
    return out;
  }
  std::vector<Label> above() const {
    std::vector<Label> out;
    for (const auto& h : hyps_)
      if (less(interior_, h)) out.push_back(h);
    return out;
  }

  std::size_t depth() const {
    std::size_t d = 0;
    for (const auto& m : max_) d = std::max(d, m.size());
    return d;
  }

  friend bool operator==(const CornersSpace& a, const CornersSpace& b) {
    return a.interior_ == b.interior_ && a.hyps_ == b.hyps_ && a.order_ == b.order_ && a.max_ == b.max_;
  }

 private:
  Label interior_ = "X";
  std::set<Label> hyps_;
  Relation order_;
  std::set<Simplex> max_;
};

inline std::vector<std::string> validate(const CornersSpace& x) {
  std::vector<std::string> out;
  for (const auto& h : x.hypersurfaces())
    if (!x.comparable(h, x.interior()))
      out.push_back("hypersurface '" + h + "' is not comparable to the interior '" + x.interior() + "'");
  std::set<std::pair<Label, Label>> reported;
  for (const auto& s : x.max_simplices())
    for (const auto& a : s)
      for (const auto& b : s)
        if (a < b && !x.comparable(a, b) && reported.emplace(a, b).second)
          out.push_back("hypersurfaces '" + a + "' and '" + b + "' meet in a corner but are incomparable");
  return out;
}

enum class InteriorPlacement { Min, Max };

// The same hypersurfaces, order and corners with the interior moved to the
// bottom (Min) or top (Max) of the order.
inline CornersSpace with_interior(const CornersSpace& x, InteriorPlacement p) {
  Relation r;
  for (const auto& [a, b] : x.order())
    if (a != x.interior() && b != x.interior()) r.emplace(a, b);
  for (const auto& h : x.hypersurfaces())
    r.emplace(p == InteriorPlacement::Min ? std::pair{x.interior(), h} : std::pair{h, x.interior()});
  return CornersSpace(x.interior(), x.hypersurfaces(), r, x.max_simplices());
}

// Keeps only the relations between incident hypersurfaces (and those
// involving the interior), then closes transitively.  This is the obvious
// reading of "the minimal suborder in which comparable means non-disjoint";
// when closure re-adds a pair of disjoint hypersurfaces no such suborder
// exists and the closed relation is returned as is.
inline CornersSpace minimal_suborder(const CornersSpace& x) {
  Relation r;
  for (const auto& [a, b] : x.order())
    if (a == x.interior() || b == x.interior() || x.incident(a, b)) r.emplace(a, b);
  return CornersSpace(x.interior(), x.hypersurfaces(), r, x.max_simplices());
}

struct RefinedSpace {
  CornersSpace base;
  std::map<Simplex, Fan> fans;  // one per maximal simplex of base
  // Optional names for rays; unnamed rays print as their vector.
  std::map<MonoidVector, Label> ray_names;
  // Optional order on ray names together with the base interior.
  std::optional<Relation> ray_order;

  Label ray_name(const MonoidVector& v) const {
    auto it = ray_names.find(v);
    return it != ray_names.end() ? it->second : v.str();
  }
  std::set<MonoidVector> rays() const {
    std::set<MonoidVector> r;
    for (const auto& [s, f] : fans) {
      auto fr = f.rays();
      r.insert(fr.begin(), fr.end());
    }
    return r;
  }
};

// Orthant fans on every maximal simplex, with no validity check on the base
// (used for cartesian products, whose product order is not an ordered
// corners structure).
inline RefinedSpace trivial_refinement(const CornersSpace& x) {
  RefinedSpace r;
  r.base = x;
  for (const auto& s : x.max_simplices()) r.fans.emplace(s, Fan::orthant(s));
  return r;
}

inline RefinedSpace initial_refinement(const CornersSpace& x) {
  auto v = validate(x);
  if (!v.empty()) throw InputError("invalid space: " + v.front());
  return trivial_refinement(x);
}

// Pairs of maximal simplices whose fans disagree on their common face.
inline std::vector<std::string> compatibility_violations(const RefinedSpace& r) {
  std::vector<std::string> out;
  for (auto a = r.fans.begin(); a != r.fans.end(); ++a)
    for (auto b = std::next(a); b != r.fans.end(); ++b) {
      Simplex common;
      std::set_intersection(a->first.begin(), a->first.end(), b->first.begin(), b->first.end(),
                            std::inserter(common, common.end()));
      if (a->second.restricted_to(common) != b->second.restricted_to(common))
        out.push_back("fans disagree on a shared face of size " + std::to_string(common.size()));
    }
  return out;
}

inline RefinedSpace blow_up_face(const RefinedSpace& r, const std::set<MonoidVector>& center) {
  Cone c(std::vector<MonoidVector>(center.begin(), center.end()));
  const Simplex supp = c.support();
  RefinedSpace out = r;
  bool supported = false;
  for (auto& [s, fan] : out.fans) {
    if (!std::includes(s.begin(), s.end(), supp.begin(), supp.end())) continue;
    supported = true;
    if (!fan.has_cone(c)) throw DomainError("blow-up center " + c.str() + " is not a cone of the fan over a corner containing it");
    fan = star_subdivide(fan, c);
  }
  if (!supported) throw DomainError("blow-up center " + c.str() + " is not supported on any corner");
  auto bad = compatibility_violations(out);
  if (!bad.empty()) throw std::logic_error("blow-up broke fan compatibility: " + bad.front());
  return out;
}

inline bool fans_equal(const RefinedSpace& a, const RefinedSpace& b) { return a.fans == b.fans; }

struct FacePoset {
  std::vector<MonoidVector> rays;              // sorted
  std::set<std::set<MonoidVector>> incidence;  // maximal cospanning sets
  std::map<MonoidVector, Label> names;
  std::optional<Relation> order;  // on names plus the interior label

  bool incident(const MonoidVector& a, const MonoidVector& b) const {
    return std::any_of(incidence.begin(), incidence.end(),
                       [&](const auto& s) { return s.count(a) && s.count(b); });
  }
};

inline FacePoset face_poset(const RefinedSpace& r) {
  FacePoset p;
  std::set<std::set<MonoidVector>> cones;
  for (const auto& [s, fan] : r.fans)
    for (const auto& c : fan.max_cones()) cones.emplace(c.generators().begin(), c.generators().end());
  for (const auto& s : cones)
    if (std::none_of(cones.begin(), cones.end(), [&](const auto& o) {
          return o.size() > s.size() && std::includes(o.begin(), o.end(), s.begin(), s.end());
        }))
      p.incidence.insert(s);
  auto rs = r.rays();
  p.rays.assign(rs.begin(), rs.end());
  for (const auto& v : p.rays) p.names.emplace(v, r.ray_name(v));
  p.order = r.ray_order;
  return p;
}

// The blown-up space as a CornersSpace on ray names.  Without a ray order
// the interior is placed below every ray and no other relations are
// recorded.
inline CornersSpace face_poset_space(const RefinedSpace& r) {
  FacePoset p = face_poset(r);
  std::set<Label> hyps;
  for (const auto& v : p.rays) hyps.insert(p.names.at(v));
  Relation order;
  if (p.order) {
    order = *p.order;
  } else {
    for (const auto& h : hyps) order.emplace(r.base.interior(), h);
  }
  std::set<Simplex> corners;
  for (const auto& s : p.incidence) {
    Simplex t;
    for (const auto& v : s) t.insert(p.names.at(v));
    corners.insert(std::move(t));
  }
  return CornersSpace(r.base.interior(), hyps, order, corners);
}

}  // namespace corners
