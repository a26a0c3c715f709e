#pragma once

// Ordered products of manifolds with ordered corners, built both from
// chains of pairs and by iterated blow-up of the cartesian product;
// relative cones and joins; the exchange between max and min joins;
// fibration descriptors on product hypersurfaces; fiber products.

#include "corners/bmaps.hpp"

namespace corners {

struct PairLabel {
  Label left, right;
  std::string str() const { return "(" + left + "," + right + ")"; }
  friend bool operator==(const PairLabel& a, const PairLabel& b) { return a.left == b.left && a.right == b.right; }
  friend bool operator<(const PairLabel& a, const PairLabel& b) {
    return std::tie(a.left, a.right) < std::tie(b.left, b.right);
  }
};

inline Label pair_name(const Label& a, const Label& b) { return PairLabel{a, b}.str(); }

inline bool comparable_to_base(const CornersSpace& x, const CornersSpace& y, const PairLabel& p) {
  const auto &xi = x.interior(), &yi = y.interior();
  return (x.leq(p.left, xi) && y.leq(p.right, yi)) || (x.leq(xi, p.left) && y.leq(yi, p.right));
}

inline bool pair_less(const CornersSpace& x, const CornersSpace& y, const PairLabel& p, const PairLabel& q) {
  return !(p == q) && x.leq(p.left, q.left) && y.leq(p.right, q.right);
}

// Coordinates of the cartesian product: (H,Y) for H in X and (X,G) for G in
// Y, where X, Y stand for the interiors.  The pair (a,b) corresponds to the
// sum of its two coordinate vectors (a missing side contributes zero).
inline MonoidVector pair_vector(const CornersSpace& x, const CornersSpace& y, const PairLabel& p) {
  MonoidVector v;
  if (p.left != x.interior()) v += MonoidVector::unit(pair_name(p.left, y.interior()));
  if (p.right != y.interior()) v += MonoidVector::unit(pair_name(x.interior(), p.right));
  return v;
}

// All pairs comparable to the base point, including the base point itself.
inline std::vector<PairLabel> pointed_pairs(const CornersSpace& x, const CornersSpace& y) {
  std::vector<PairLabel> out;
  for (const auto& a : x.labels())
    for (const auto& b : y.labels())
      if (comparable_to_base(x, y, {a, b})) out.push_back({a, b});
  return out;
}

// Ray names of the ordered product mapped to their pairs.
inline std::map<Label, PairLabel> product_pairs(const CornersSpace& x, const CornersSpace& y) {
  std::map<Label, PairLabel> out;
  const PairLabel base{x.interior(), y.interior()};
  for (const auto& p : pointed_pairs(x, y))
    if (!(p == base)) out.emplace(p.str(), p);
  return out;
}

inline CornersSpace cartesian_space(const CornersSpace& x, const CornersSpace& y) {
  std::set<Label> hyps;
  for (const auto& h : x.hypersurfaces()) hyps.insert(pair_name(h, y.interior()));
  for (const auto& g : y.hypersurfaces()) hyps.insert(pair_name(x.interior(), g));
  std::set<Simplex> corners;
  for (const auto& s : x.corner_cells())
    for (const auto& t : y.corner_cells()) {
      Simplex st;
      for (const auto& h : s) st.insert(pair_name(h, y.interior()));
      for (const auto& g : t) st.insert(pair_name(x.interior(), g));
      corners.insert(std::move(st));
    }
  return CornersSpace(pair_name(x.interior(), y.interior()), hyps, {}, corners);
}

namespace detail {

inline void require_valid(const CornersSpace& x) {
  auto v = validate(x);
  if (!v.empty()) throw InputError("invalid ordered corners space: " + v.front());
}

// Names every pair ray and records the product order on them.
inline void name_product_rays(RefinedSpace& r, const CornersSpace& x, const CornersSpace& y) {
  const auto pts = pointed_pairs(x, y);
  const PairLabel base{x.interior(), y.interior()};
  Relation order;
  for (const auto& p : pts) {
    if (!(p == base)) r.ray_names[pair_vector(x, y, p)] = p.str();
    for (const auto& q : pts)
      if (pair_less(x, y, p, q)) order.emplace(p.str(), q.str());
  }
  r.ray_order = std::move(order);
}

}  // namespace detail

// For each pair of maximal corners, the fan whose maximal cones are spanned
// by the maximal chains of pairs (in the product order) comparable to the
// base point, with the base point itself dropped.
inline RefinedSpace ordered_product_fan(const CornersSpace& x, const CornersSpace& y) {
  detail::require_valid(x);
  detail::require_valid(y);
  RefinedSpace r;
  r.base = cartesian_space(x, y);
  const PairLabel base{x.interior(), y.interior()};
  for (const auto& s : x.corner_cells())
    for (const auto& t : y.corner_cells()) {
      std::vector<Label> as(s.begin(), s.end()), bs(t.begin(), t.end());
      as.push_back(x.interior());
      bs.push_back(y.interior());
      std::vector<PairLabel> elems;
      for (const auto& a : as)
        for (const auto& b : bs)
          if (comparable_to_base(x, y, {a, b})) elems.push_back({a, b});
      auto chains = maximal_chains(elems, [&](const PairLabel& p, const PairLabel& q) { return pair_less(x, y, p, q); });
      std::set<Cone> cones;
      for (const auto& c : chains) {
        std::vector<MonoidVector> gens;
        for (const auto& p : c)
          if (!(p == base)) gens.push_back(pair_vector(x, y, p));
        cones.insert(Cone(std::move(gens)));
      }
      Simplex key;
      for (const auto& h : s) key.insert(pair_name(h, y.interior()));
      for (const auto& g : t) key.insert(pair_name(x.interior(), g));
      r.fans.emplace(key, Fan(key, std::move(cones)));
    }
  detail::name_product_rays(r, x, y);
  return r;
}

// Orders in which to blow up the corners H x G of the cartesian product:
// first the pairs below the interior on both sides, then those above.
struct ProductBlowupOrder {
  std::vector<PairLabel> lower;
  std::vector<PairLabel> upper;
};

// The canonical admissible order: a linear extension of the product order
// on the lower pairs, and of the reversed product order on the upper pairs.
// `pick` (see linear_extension) selects among admissible choices.
inline ProductBlowupOrder admissible_blowup_order(const CornersSpace& x, const CornersSpace& y,
                                                  const std::function<std::size_t(std::size_t)>& pick = {}) {
  std::vector<PairLabel> lo, hi;
  for (const auto& h : x.below())
    for (const auto& g : y.below()) lo.push_back({h, g});
  for (const auto& h : x.above())
    for (const auto& g : y.above()) hi.push_back({h, g});
  auto asc = [&](const PairLabel& p, const PairLabel& q) { return pair_less(x, y, p, q); };
  auto desc = [&](const PairLabel& p, const PairLabel& q) { return pair_less(x, y, q, p); };
  return {linear_extension(lo, asc, pick), linear_extension(hi, desc, pick)};
}

// Iterated blow-up of the cartesian product in the given order.  Throws
// DomainError when a center fails to be a cone (an inadmissible order may
// also succeed but produce a different fan).
inline RefinedSpace ordered_product_blowup(const CornersSpace& x, const CornersSpace& y,
                                           const std::optional<ProductBlowupOrder>& order = std::nullopt) {
  detail::require_valid(x);
  detail::require_valid(y);
  const ProductBlowupOrder o = order ? *order : admissible_blowup_order(x, y);
  RefinedSpace r = trivial_refinement(cartesian_space(x, y));
  for (const auto* seq : {&o.lower, &o.upper})
    for (const auto& p : *seq)
      r = blow_up_face(r, {MonoidVector::unit(pair_name(p.left, y.interior())),
                           MonoidVector::unit(pair_name(x.interior(), p.right))});
  detail::name_product_rays(r, x, y);
  return r;
}

struct ProductSpace {
  CornersSpace space;                     // hypersurfaces named "(a,b)"
  RefinedSpace fan;                       // the ordered product fan
  std::map<Label, PairLabel> pairs;       // hypersurface name -> pair
  CornersSpace left, right;               // the factors
};

inline ProductSpace product_space(const CornersSpace& x, const CornersSpace& y) {
  ProductSpace p;
  p.fan = ordered_product_fan(x, y);
  p.space = face_poset_space(p.fan);
  p.pairs = product_pairs(x, y);
  p.left = x;
  p.right = y;
  auto v = validate(p.space);
  if (!v.empty()) throw std::logic_error("ordered product failed validation: " + v.front());
  return p;
}

// The lifts of the two factor projections.
inline std::pair<BMap, BMap> lifted_projections(const ProductSpace& p) {
  std::map<Label, MonoidVector> cx, cy;
  for (const auto& [name, pr] : p.pairs) {
    if (pr.left != p.left.interior()) cx.emplace(name, MonoidVector::unit(pr.left));
    if (pr.right != p.right.interior()) cy.emplace(name, MonoidVector::unit(pr.right));
  }
  return {BMap(p.space, p.left, cx), BMap(p.space, p.right, cy)};
}

namespace detail {

inline void require_morphism(const BMap& f, const char* what) {
  auto c = classify(f);
  if (!c.simple || !c.b_normal || !c.ordered)
    throw DomainError(std::string(what) + " is not a morphism of ordered corners (simple, b-normal, ordered)");
  if (!f.corner_image_violations().empty()) throw DomainError(std::string(what) + " does not map corners to corners");
}

}  // namespace detail

// The unique morphism Z -> X (x) Y through which f and g factor: each
// hypersurface E goes to the ray (f#(E), g#(E)).
inline BMap universal_factorization(const BMap& f, const BMap& g, const ProductSpace& p) {
  if (!(f.domain() == g.domain())) throw InputError("maps have different domains");
  if (!(f.codomain() == p.left) || !(g.codomain() == p.right)) throw InputError("product does not match the codomains");
  detail::require_morphism(f, "first map");
  detail::require_morphism(g, "second map");
  std::map<Label, MonoidVector> cols;
  for (const auto& e : f.domain().hypersurfaces()) {
    PairLabel q{*f.sharp(e), *g.sharp(e)};
    if (q.left == p.left.interior() && q.right == p.right.interior()) continue;
    if (!p.pairs.count(q.str())) throw std::logic_error("image pair " + q.str() + " is not a ray");
    cols.emplace(e, MonoidVector::unit(q.str()));
  }
  BMap u(f.domain(), p.space, cols);
  auto bad = u.corner_image_violations();
  if (!bad.empty()) throw std::logic_error("factorization is not a b-map: " + bad.front());
  return u;
}

inline BMap universal_factorization(const BMap& f, const BMap& g) {
  return universal_factorization(f, g, product_space(f.codomain(), g.codomain()));
}

// ---------------------------------------------------------------------------
// Relative cones and joins.

enum class ConeVariant { Min, Max, Relative };
// For relative cones: which face the space is (fiber: principal face
// minimal, base: principal face maximal).
enum class ConeSide { Fiber, Base };

inline Label fresh_label(const CornersSpace& x, Label want) {
  while (x.is_label(want)) want += "'";
  return want;
}

// X x [0,inf) with the principal hypersurface X x 0 added: at the bottom
// of the order for Max (and relative fiber) cones, at the top for Min (and
// relative base) cones.  The rest of the order is kept.
inline CornersSpace relative_cone(const CornersSpace& x, ConeVariant v, ConeSide side = ConeSide::Fiber,
                                  const Label& principal = "xi") {
  const Label xi = fresh_label(x, principal);
  const bool bottom = v == ConeVariant::Max || (v == ConeVariant::Relative && side == ConeSide::Fiber);
  Relation r = x.order();
  for (const auto& l : x.labels()) r.emplace(bottom ? std::pair{xi, l} : std::pair{l, xi});
  auto hyps = x.hypersurfaces();
  hyps.insert(xi);
  std::set<Simplex> corners;
  for (auto s : x.corner_cells()) {
    s.insert(xi);
    corners.insert(std::move(s));
  }
  return CornersSpace(x.interior(), hyps, r, corners);
}

enum class JoinVariant { Min, Max, Relative };

struct FibrationTag {
  struct Descriptor {
    enum class Kind { Single, OrderedProduct, Join };
    Kind kind = Kind::Single;
    std::vector<std::string> args;
    std::string str() const {
      switch (kind) {
        case Kind::Single: return args.at(0);
        case Kind::OrderedProduct: return "OrderedProduct(" + args.at(0) + "," + args.at(1) + ")";
        case Kind::Join: return "Join(" + args.at(0) + "," + args.at(1) + ")";
      }
      return "?";
    }
    friend bool operator==(const Descriptor& a, const Descriptor& b) { return a.kind == b.kind && a.args == b.args; }
  };
  Descriptor fiber, base;
  std::set<Label> fiber_index;  // proper hypersurfaces strictly above
  std::set<Label> base_index;   // proper hypersurfaces strictly below
};

// Index sets of a hypersurface in an ordered corners space: proper
// hypersurfaces strictly above (fiber side) and strictly below (base side).
inline std::pair<std::set<Label>, std::set<Label>> fibration_index_sets(const CornersSpace& x, const Label& h) {
  std::set<Label> up, down;
  for (const auto& k : x.hypersurfaces()) {
    if (x.less(h, k)) up.insert(k);
    if (x.less(k, h)) down.insert(k);
  }
  return {up, down};
}

struct JoinResult {
  CornersSpace space;                 // interior is the principal ray (xi,eta)
  std::map<Label, PairLabel> pairs;   // hypersurface -> pair in the cone product
  std::map<Label, MonoidVector> vectors;  // hypersurface -> vector in the cone product
  Label xi, eta;
  CornersSpace left_cone, right_cone;
  // The same space obtained by iterated blow-up of X x Y x I, and the
  // vector each hypersurface corresponds to there.
  RefinedSpace direct;
  std::map<Label, MonoidVector> direct_vectors;
  bool direct_blowup_agrees = false;
  std::map<Label, FibrationTag> tags;
};

namespace detail {

inline Label direct_x(const CornersSpace&, const CornersSpace& y, const Label& h) {
  return h + "×" + y.interior() + "×I";
}
inline Label direct_y(const CornersSpace& x, const CornersSpace&, const Label& g) {
  return x.interior() + "×" + g + "×I";
}
inline Label direct_end(const CornersSpace& x, const CornersSpace& y, int end) {
  return x.interior() + "×" + y.interior() + "×{" + std::to_string(end) + "}";
}

// Iterated blow-up of X x Y x I realizing the relative join (fiber side) or
// its base-side analogue; max and min joins are the fiber and base cases
// with the interiors moved to the top and bottom respectively.
inline RefinedSpace direct_join_blowup(const CornersSpace& x, const CornersSpace& y, ConeSide side) {
  std::set<Label> hyps;
  for (const auto& h : x.hypersurfaces()) hyps.insert(direct_x(x, y, h));
  for (const auto& g : y.hypersurfaces()) hyps.insert(direct_y(x, y, g));
  const Label e0 = direct_end(x, y, 0), e1 = direct_end(x, y, 1);
  hyps.insert(e0);
  hyps.insert(e1);
  std::set<Simplex> corners;
  for (const auto& s : x.corner_cells())
    for (const auto& t : y.corner_cells()) {
      Simplex st;
      for (const auto& h : s) st.insert(direct_x(x, y, h));
      for (const auto& g : t) st.insert(direct_y(x, y, g));
      corners.insert(st);
      auto s0 = st, s1 = st;
      s0.insert(e0);
      s1.insert(e1);
      corners.insert(s0);
      corners.insert(s1);
    }
  RefinedSpace r = trivial_refinement(CornersSpace(x.interior() + "×" + y.interior() + "×I", hyps, {}, corners));

  auto ux = [&](const Label& h) { return MonoidVector::unit(direct_x(x, y, h)); };
  auto uy = [&](const Label& g) { return MonoidVector::unit(direct_y(x, y, g)); };
  auto asc_x = [&](const Label& a, const Label& b) { return x.less(a, b); };
  auto asc_y = [&](const Label& a, const Label& b) { return y.less(a, b); };
  auto desc_x = [&](const Label& a, const Label& b) { return x.less(b, a); };
  auto desc_y = [&](const Label& a, const Label& b) { return y.less(b, a); };
  const ProductBlowupOrder o = admissible_blowup_order(x, y);
  auto pairs_blowup = [&](const std::vector<PairLabel>& ps) {
    for (const auto& p : ps) r = blow_up_face(r, {ux(p.left), uy(p.right)});
  };
  if (side == ConeSide::Fiber) {
    for (const auto& h : linear_extension(x.below(), asc_x)) r = blow_up_face(r, {ux(h), MonoidVector::unit(e0)});
    for (const auto& g : linear_extension(y.below(), asc_y)) r = blow_up_face(r, {uy(g), MonoidVector::unit(e1)});
    pairs_blowup(o.lower);
    pairs_blowup(o.upper);
  } else {
    for (const auto& h : linear_extension(x.above(), desc_x)) r = blow_up_face(r, {ux(h), MonoidVector::unit(e0)});
    for (const auto& g : linear_extension(y.above(), desc_y)) r = blow_up_face(r, {uy(g), MonoidVector::unit(e1)});
    pairs_blowup(o.upper);
    pairs_blowup(o.lower);
  }
  return r;
}

}  // namespace detail

// The principal hypersurface (xi,eta) of the product of relative cones,
// with its induced corners and order, cross-checked against the direct
// blow-up of X x Y x I.
inline JoinResult join(const CornersSpace& x0, const CornersSpace& y0, JoinVariant v,
                       ConeSide side = ConeSide::Fiber) {
  detail::require_valid(x0);
  detail::require_valid(y0);
  CornersSpace x = x0, y = y0;
  ConeVariant cv = ConeVariant::Relative;
  if (v == JoinVariant::Max) {
    x = with_interior(x0, InteriorPlacement::Max);
    y = with_interior(y0, InteriorPlacement::Max);
    side = ConeSide::Fiber;
    cv = ConeVariant::Max;
  } else if (v == JoinVariant::Min) {
    x = with_interior(x0, InteriorPlacement::Min);
    y = with_interior(y0, InteriorPlacement::Min);
    side = ConeSide::Base;
    cv = ConeVariant::Min;
  }
  JoinResult j;
  j.left_cone = relative_cone(x, cv, side, "xi");
  j.right_cone = relative_cone(y, cv, side, "eta");
  j.xi = fresh_label(x, "xi");
  j.eta = fresh_label(y, "eta");
  const auto& xc = j.left_cone;
  const auto& yc = j.right_cone;
  RefinedSpace fan = ordered_product_fan(xc, yc);
  const auto pairs = product_pairs(xc, yc);
  const PairLabel principal{j.xi, j.eta};
  const MonoidVector pv = pair_vector(xc, yc, principal);

  std::set<Simplex> link;
  std::set<Label> hyps;
  std::set<std::set<MonoidVector>> link_vectors;
  for (const auto& [s, f] : fan.fans)
    for (const auto& c : f.max_cones()) {
      if (!c.has_generator(pv)) continue;
      Simplex l;
      std::set<MonoidVector> lv;
      for (const auto& g : c.generators())
        if (g != pv) {
          l.insert(fan.ray_name(g));
          lv.insert(g);
        }
      hyps.insert(l.begin(), l.end());
      link.insert(std::move(l));
      link_vectors.insert(std::move(lv));
    }
  Relation order;
  const Label centre = principal.str();
  for (const auto& [a, b] : *fan.ray_order)
    if ((hyps.count(a) || a == centre) && (hyps.count(b) || b == centre)) order.emplace(a, b);
  j.space = CornersSpace(centre, hyps, order, link);
  for (const auto& h : hyps) {
    j.pairs.emplace(h, pairs.at(h));
    j.vectors.emplace(h, pair_vector(xc, yc, pairs.at(h)));
  }

  // Cross-check against the direct blow-up of X x Y x I.
  j.direct = detail::direct_join_blowup(x, y, side);
  auto phi_x = [&](const Label& a) {
    if (a == j.xi) return MonoidVector::unit(detail::direct_end(x, y, 1));
    if (a == x.interior()) return MonoidVector{};
    return MonoidVector::unit(detail::direct_x(x, y, a));
  };
  auto phi_y = [&](const Label& b) {
    if (b == j.eta) return MonoidVector::unit(detail::direct_end(x, y, 0));
    if (b == y.interior()) return MonoidVector{};
    return MonoidVector::unit(detail::direct_y(x, y, b));
  };
  std::map<MonoidVector, MonoidVector> phi;
  for (const auto& h : hyps) {
    const auto& p = pairs.at(h);
    MonoidVector d = phi_x(p.left) + phi_y(p.right);
    j.direct_vectors.emplace(h, d);
    phi.emplace(j.vectors.at(h), d);
  }
  std::set<std::set<MonoidVector>> mapped, direct_cones;
  for (const auto& lv : link_vectors) {
    std::set<MonoidVector> m;
    for (const auto& g : lv) m.insert(phi.at(g));
    mapped.insert(std::move(m));
  }
  for (const auto& [s, f] : j.direct.fans)
    for (const auto& c : f.max_cones()) direct_cones.emplace(c.generators().begin(), c.generators().end());
  j.direct_blowup_agrees = mapped == direct_cones;

  for (const auto& h : hyps) {
    FibrationTag t;
    std::tie(t.fiber_index, t.base_index) = fibration_index_sets(j.space, h);
    t.fiber = {FibrationTag::Descriptor::Kind::Single, {"F_" + h}};
    t.base = {FibrationTag::Descriptor::Kind::Single, {"B_" + h}};
    j.tags.emplace(h, std::move(t));
  }
  return j;
}

struct JoinEquivalence {
  std::map<Label, Label> ray_map;  // max-join hypersurface -> min-join hypersurface
  bool bijective = false;
  bool incidence_iso = false;
  bool order_iso = false;        // on proper hypersurfaces
  bool tags_intertwined = false;  // index sets map onto index sets
  bool generators_match = false;  // agrees with the monoid exchange mod xi+eta
  // Named checks: faces of X x Y x I exchanged or fixed by the map.
  std::vector<std::pair<std::string, bool>> face_checks;
  JoinResult max_join, min_join;
};

inline JoinEquivalence join_equivalence(const CornersSpace& x, const CornersSpace& y) {
  JoinEquivalence e;
  e.max_join = join(x, y, JoinVariant::Max);
  e.min_join = join(x, y, JoinVariant::Min);
  const auto& jx = e.max_join;
  const auto& jn = e.min_join;
  auto swap_x = [&](const Label& a) { return a == jx.xi ? x.interior() : a == x.interior() ? jx.xi : a; };
  auto swap_y = [&](const Label& b) { return b == jx.eta ? y.interior() : b == y.interior() ? jx.eta : b; };

  std::set<Label> image;
  e.bijective = true;
  for (const auto& [name, p] : jx.pairs) {
    Label m = pair_name(swap_x(p.left), swap_y(p.right));
    if (!jn.pairs.count(m)) e.bijective = false;
    e.ray_map.emplace(name, m);
    image.insert(m);
  }
  e.bijective = e.bijective && image.size() == jn.pairs.size();
  if (!e.bijective) return e;

  std::set<Simplex> mapped;
  for (const auto& s : jx.space.max_simplices()) {
    Simplex t;
    for (const auto& l : s) t.insert(e.ray_map.at(l));
    mapped.insert(std::move(t));
  }
  e.incidence_iso = mapped == jn.space.max_simplices();

  e.order_iso = true;
  for (const auto& a : jx.space.hypersurfaces())
    for (const auto& b : jx.space.hypersurfaces())
      if (jx.space.less(a, b) != jn.space.less(e.ray_map.at(a), e.ray_map.at(b))) e.order_iso = false;

  e.tags_intertwined = true;
  for (const auto& [h, t] : jx.tags) {
    const auto& u = jn.tags.at(e.ray_map.at(h));
    std::set<Label> up, down;
    for (const auto& l : t.fiber_index) up.insert(e.ray_map.at(l));
    for (const auto& l : t.base_index) down.insert(e.ray_map.at(l));
    if (up != u.fiber_index || down != u.base_index) e.tags_intertwined = false;
  }

  // Monoid exchange xi <-> eta, h -> h + eta, g -> xi + g, compared modulo
  // xi + eta (reduced so the eta coordinate vanishes).
  const CornersSpace& xc = jx.left_cone;
  const CornersSpace& yc = jx.right_cone;
  const Label xi_coord = pair_name(jx.xi, yc.interior());
  const Label eta_coord = pair_name(xc.interior(), jx.eta);
  std::set<Label> left_coords;
  for (const auto& h : x.hypersurfaces()) left_coords.insert(pair_name(h, yc.interior()));
  const auto xi_eta = MonoidVector::unit(xi_coord) + MonoidVector::unit(eta_coord);
  auto reduce = [&](const MonoidVector& v) { return v - v[eta_coord] * xi_eta; };
  auto exchange = [&](const MonoidVector& v) {
    MonoidVector out;
    for (const auto& [l, k] : v.coords()) {
      if (l == xi_coord)
        out += k * MonoidVector::unit(eta_coord);
      else if (l == eta_coord)
        out += k * MonoidVector::unit(xi_coord);
      else if (left_coords.count(l))
        out += k * (MonoidVector::unit(l) + MonoidVector::unit(eta_coord));
      else
        out += k * (MonoidVector::unit(l) + MonoidVector::unit(xi_coord));
    }
    return out;
  };
  e.generators_match = true;
  for (const auto& [name, v] : jx.vectors)
    if (reduce(exchange(v)) != reduce(jn.vectors.at(e.ray_map.at(name)))) e.generators_match = false;

  // Face-level statements about X x Y x I.
  auto find = [](const JoinResult& j, const MonoidVector& d) -> std::optional<Label> {
    for (const auto& [h, v] : j.direct_vectors)
      if (v == d) return h;
    return std::nullopt;
  };
  auto exchanged = [&](const std::string& what, const MonoidVector& from, const MonoidVector& to) {
    auto a = find(jx, from);
    auto b = find(jn, to);
    e.face_checks.emplace_back(what, a && b && e.ray_map.at(*a) == *b);
  };
  const auto x_in_max = with_interior(x, InteriorPlacement::Max);
  const auto y_in_max = with_interior(y, InteriorPlacement::Max);
  auto dx = [&](const Label& h) { return MonoidVector::unit(detail::direct_x(x_in_max, y_in_max, h)); };
  auto dy = [&](const Label& g) { return MonoidVector::unit(detail::direct_y(x_in_max, y_in_max, g)); };
  const auto e0 = MonoidVector::unit(detail::direct_end(x_in_max, y_in_max, 0));
  const auto e1 = MonoidVector::unit(detail::direct_end(x_in_max, y_in_max, 1));
  exchanged("X×Y×{0} <-> X×Y×{1}", e0, e1);
  for (const auto& h : x.hypersurfaces()) {
    exchanged(h + "×Y×{0} <-> " + h + "×Y×I", dx(h) + e0, dx(h));
    exchanged(h + "×Y×I <-> " + h + "×Y×{0}", dx(h), dx(h) + e0);
    for (const auto& g : y.hypersurfaces()) exchanged(h + "×" + g + "×I fixed", dx(h) + dy(g), dx(h) + dy(g));
  }
  for (const auto& g : y.hypersurfaces()) exchanged("X×" + g + "×{1} <-> X×" + g + "×I", dy(g) + e1, dy(g));
  return e;
}

// ---------------------------------------------------------------------------
// Fibration descriptors on product hypersurfaces.

namespace detail {

// Fiber and base of a factor's interior viewed as a (degenerate)
// hypersurface: the whole space is the fiber when the interior is minimal,
// the base when maximal.
inline std::pair<std::string, std::string> interior_fiber_base(const CornersSpace& x) {
  if (x.below().empty()) return {x.interior(), "pt"};
  if (x.above().empty()) return {"pt", x.interior()};
  return {"F_" + x.interior(), "B_" + x.interior()};
}

inline FibrationTag::Descriptor ordered_product_descriptor(const std::string& a, const std::string& b) {
  using K = FibrationTag::Descriptor::Kind;
  if (b == "pt") return {K::Single, {a}};
  if (a == "pt") return {K::Single, {b}};
  return {K::OrderedProduct, {a, b}};
}

}  // namespace detail

inline std::map<Label, FibrationTag> fibration_assignment(const ProductSpace& p) {
  using K = FibrationTag::Descriptor::Kind;
  const auto& x = p.left;
  const auto& y = p.right;
  const auto [fx, bx] = detail::interior_fiber_base(x);
  const auto [fy, by] = detail::interior_fiber_base(y);
  std::map<Label, FibrationTag> out;
  for (const auto& [name, pr] : p.pairs) {
    FibrationTag t;
    const bool lx = pr.left == x.interior(), ry = pr.right == y.interior();
    const std::string fh = lx ? fx : "F_" + pr.left, bh = lx ? bx : "B_" + pr.left;
    const std::string fg = ry ? fy : "F_" + pr.right, bg = ry ? by : "B_" + pr.right;
    if (lx || ry) {
      t.fiber = detail::ordered_product_descriptor(fh, fg);
      t.base = detail::ordered_product_descriptor(bh, bg);
    } else if (x.less(pr.left, x.interior())) {
      t.fiber = {K::Join, {fh, fg}};
      t.base = detail::ordered_product_descriptor(bh, bg);
    } else {
      t.fiber = detail::ordered_product_descriptor(fh, fg);
      t.base = {K::Join, {bh, bg}};
    }
    std::tie(t.fiber_index, t.base_index) = fibration_index_sets(p.space, name);
    out.emplace(name, std::move(t));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fiber products.

struct FiberProduct {
  enum class FaceType { FiberProduct, Join };
  std::vector<PairLabel> poset;  // pointed: includes the base point
  std::map<Label, MonoidVector> functionals;  // per hypersurface of Z, on cartesian coordinates
  bool psub_ok = false;
  std::map<Label, FaceType> tags;  // per proper pair in the poset
  ProductSpace product;
};

inline FiberProduct fiber_product(const BMap& f, const BMap& g) {
  if (!(f.codomain() == g.codomain())) throw InputError("maps have different codomains");
  detail::require_morphism(f, "first map");
  detail::require_morphism(g, "second map");
  const auto& x = f.domain();
  const auto& y = g.domain();
  const auto& z = f.codomain();
  FiberProduct out;
  out.product = product_space(x, y);
  for (const auto& p : pointed_pairs(x, y))
    if (*f.sharp(p.left) == *g.sharp(p.right)) out.poset.push_back(p);
  for (const auto& e : z.hypersurfaces()) {
    MonoidVector s;
    for (const auto& h : x.hypersurfaces()) s += f.exponent(e, h) * MonoidVector::unit(pair_name(h, y.interior()));
    for (const auto& gg : y.hypersurfaces()) s -= g.exponent(e, gg) * MonoidVector::unit(pair_name(x.interior(), gg));
    out.functionals.emplace(e, std::move(s));
  }
  std::vector<MonoidVector> fs;
  for (const auto& [e, s] : out.functionals) fs.push_back(s);
  out.psub_ok = psub_lift(out.product.fan, fs);
  for (const auto& p : out.poset) {
    const bool lx = p.left == x.interior(), ry = p.right == y.interior();
    if (lx && ry) continue;
    const bool join_type = !lx && !ry && *f.sharp(p.left) == z.interior();
    out.tags.emplace(p.str(), join_type ? FiberProduct::FaceType::Join : FiberProduct::FaceType::FiberProduct);
  }
  return out;
}

}  // namespace corners
