#pragma once

// Rigid interior b-maps recorded by their boundary exponents e(G,H), the
// predicates on them, lifting through blow-ups, and the smoothness and
// p-submanifold tests for rational combinations of defining functions.

#include "corners/space.hpp"

namespace corners {

class BMap {
 public:
  BMap() = default;
  // columns[H] is the image of the generator h, written over codomain
  // hypersurfaces: its G-coordinate is e(G,H).  Missing columns are zero.
  BMap(CornersSpace domain, CornersSpace codomain, std::map<Label, MonoidVector> columns)
      : dom_(std::move(domain)), cod_(std::move(codomain)) {
    for (auto& [h, col] : columns) {
      if (!dom_.hypersurfaces().count(h)) throw InputError("exponent column for unknown domain hypersurface '" + h + "'");
      require_support_in(col, cod_.hypersurfaces());
      if (!col.is_nonnegative()) throw InputError("negative boundary exponent in column '" + h + "'");
    }
    for (const auto& h : dom_.hypersurfaces()) {
      auto it = columns.find(h);
      cols_.emplace(h, it == columns.end() ? MonoidVector{} : it->second);
    }
  }

  const CornersSpace& domain() const { return dom_; }
  const CornersSpace& codomain() const { return cod_; }
  const std::map<Label, MonoidVector>& columns() const { return cols_; }
  const MonoidVector& column(const Label& h) const {
    auto it = cols_.find(h);
    if (it == cols_.end()) throw InputError("no domain hypersurface '" + h + "'");
    return it->second;
  }
  Integer exponent(const Label& g, const Label& h) const { return column(h)[g]; }

  // The face containing the image of the interior of H: the codomain interior
  // for zero columns and for the domain interior, the unique G when the
  // column has one nonzero entry, nullopt otherwise.
  std::optional<Label> sharp(const Label& h) const {
    if (h == dom_.interior()) return cod_.interior();
    const auto& c = column(h);
    if (c.is_zero()) return cod_.interior();
    if (c.coords().size() == 1) return c.coords().begin()->first;
    return std::nullopt;
  }

  // Domain corners whose image is not contained in a codomain corner.
  std::vector<std::string> corner_image_violations() const {
    std::vector<std::string> out;
    for (const auto& s : dom_.max_simplices()) {
      Simplex img;
      for (const auto& h : s) {
        auto supp = column(h).support();
        img.insert(supp.begin(), supp.end());
      }
      if (!cod_.has_simplex(img)) {
        std::string names;
        for (const auto& h : s) names += (names.empty() ? "" : ",") + h;
        out.push_back("image of corner {" + names + "} is not a corner of the codomain");
      }
    }
    return out;
  }

  friend bool operator==(const BMap& a, const BMap& b) {
    return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.cols_ == b.cols_;
  }

 private:
  CornersSpace dom_, cod_;
  std::map<Label, MonoidVector> cols_;
};

inline BMap identity_map(const CornersSpace& x) {
  std::map<Label, MonoidVector> cols;
  for (const auto& h : x.hypersurfaces()) cols.emplace(h, MonoidVector::unit(h));
  return BMap(x, x, cols);
}

struct Classification {
  bool simple = false;
  bool b_normal = false;
  bool ordered = false;
  bool interior_fibered_order = false;
};

inline Classification classify(const BMap& f) {
  Classification c;
  c.simple = c.b_normal = true;
  for (const auto& [h, col] : f.columns()) {
    for (const auto& kv : col.coords())
      if (kv.second != 1) c.simple = false;
    if (col.coords().size() > 1) c.b_normal = false;
  }
  if (!c.b_normal) return c;
  const auto& x = f.domain();
  const auto& y = f.codomain();
  const auto labels = x.labels();
  c.ordered = true;
  for (const auto& a : labels)
    for (const auto& b : labels)
      if (x.less(a, b) && !y.leq(*f.sharp(a), *f.sharp(b))) c.ordered = false;
  c.interior_fibered_order = true;
  for (const auto& h : x.hypersurfaces()) {
    const Label fh = *f.sharp(h);
    for (const auto& h2 : labels) {
      const Label fh2 = *f.sharp(h2);
      if (x.leq(h2, h) && !y.leq(fh2, fh)) c.interior_fibered_order = false;
      if (x.leq(h, h2) && !y.leq(fh, fh2) && fh2 != y.interior()) c.interior_fibered_order = false;
    }
  }
  return c;
}

// g after f.  The corner-image condition is re-checked on the result.
inline BMap compose(const BMap& g, const BMap& f) {
  if (!(f.codomain() == g.domain())) throw InputError("composition of maps whose spaces do not match");
  std::map<Label, MonoidVector> cols;
  for (const auto& [h, col] : f.columns()) {
    MonoidVector c;
    for (const auto& [mid, e] : col.coords()) c += e * g.column(mid);
    cols.emplace(h, std::move(c));
  }
  BMap out(f.domain(), g.codomain(), std::move(cols));
  auto bad = out.corner_image_violations();
  if (!bad.empty()) throw DomainError("composite is not a b-map: " + bad.front());
  return out;
}

// The map from the blown-up space (rays named as in r) down to the base:
// each ray maps to its own vector.
inline BMap blow_down(const RefinedSpace& r) {
  CornersSpace top = face_poset_space(r);
  std::map<Label, MonoidVector> cols;
  for (const auto& v : r.rays()) cols.emplace(r.ray_name(v), v);
  return BMap(top, r.base, cols);
}

// The unique lift of f into the blow-up described by ry, or nullopt when
// some domain corner has image not contained in a single cone.  Every cone
// containing an image is used and the resulting coefficients are required
// to agree.
inline std::optional<BMap> lift_through_blowup(const BMap& f, const RefinedSpace& ry) {
  if (!(f.codomain() == ry.base)) throw InputError("refinement is not over the codomain of the map");
  std::map<Label, MonoidVector> lifted;
  for (const auto& s : f.domain().max_simplices()) {
    Simplex img;
    for (const auto& h : s) {
      auto supp = f.column(h).support();
      img.insert(supp.begin(), supp.end());
    }
    bool found = false;
    for (const auto& [t, fan] : ry.fans) {
      if (!std::includes(t.begin(), t.end(), img.begin(), img.end())) continue;
      for (const auto& c : fan.max_cones()) {
        std::map<Label, MonoidVector> here;
        bool inside = true;
        for (const auto& h : s) {
          auto x = cone_membership(c, f.column(h), fan.ambient());
          if (!x) {
            inside = false;
            break;
          }
          MonoidVector col;
          for (std::size_t i = 0; i < x->size(); ++i)
            col += to_integer((*x)[i]) * MonoidVector::unit(ry.ray_name(c.generators()[i]));
          here.emplace(h, std::move(col));
        }
        if (!inside) continue;
        found = true;
        for (auto& [h, col] : here) {
          auto [it, fresh] = lifted.emplace(h, col);
          if (!fresh && it->second != col)
            throw std::logic_error("lift of '" + h + "' depends on the chosen cone");
        }
      }
    }
    if (!found) return std::nullopt;
  }
  return BMap(f.domain(), face_poset_space(ry), lifted);
}

// A rational combination prod rho_j^{a_j}, stored as the functional a.
using RationalCombination = MonoidVector;

struct SigmaLift {
  enum class Overall { SmoothNonNegative, SmoothNonPositive, SmoothMixed, NotSmooth };
  struct ConeVerdict {
    Simplex corner;
    Cone cone;
    SignVerdict verdict;
  };
  std::vector<ConeVerdict> verdicts;
  Overall overall = Overall::SmoothNonNegative;
  std::vector<MonoidVector> vanishing;          // rays where sigma vanishes
  std::vector<MonoidVector> inverse_vanishing;  // rays where 1/sigma vanishes
};

inline std::string to_string(SigmaLift::Overall o) {
  switch (o) {
    case SigmaLift::Overall::SmoothNonNegative: return "smooth_to_[0,inf)";
    case SigmaLift::Overall::SmoothNonPositive: return "smooth_to_(0,inf]";
    case SigmaLift::Overall::SmoothMixed: return "smooth_to_[0,inf]";
    case SigmaLift::Overall::NotSmooth: return "not_smooth";
  }
  return "?";
}

inline SigmaLift sigma_lift(const RefinedSpace& r, const RationalCombination& s) {
  require_support_in(s, r.base.hypersurfaces());
  SigmaLift out;
  bool pos = false, neg = false, bad = false;
  for (const auto& [t, fan] : r.fans)
    for (const auto& c : fan.max_cones()) {
      auto v = functional_sign(c, s);
      pos |= v.kind == SignVerdict::Kind::NonNegative;
      neg |= v.kind == SignVerdict::Kind::NonPositive;
      bad |= v.kind == SignVerdict::Kind::Indeterminate;
      out.verdicts.push_back({t, c, std::move(v)});
    }
  using O = SigmaLift::Overall;
  out.overall = bad ? O::NotSmooth : pos && neg ? O::SmoothMixed : neg ? O::SmoothNonPositive : O::SmoothNonNegative;
  for (const auto& v : r.rays()) {
    Integer p = pairing(s, v);
    if (p > 0) out.vanishing.push_back(v);
    if (p < 0) out.inverse_vanishing.push_back(v);
  }
  return out;
}

inline bool psub_lift(const RefinedSpace& r, const std::vector<RationalCombination>& ss) {
  for (const auto& s : ss) require_support_in(s, r.base.hypersurfaces());
  for (const auto& [t, fan] : r.fans)
    for (const auto& c : fan.max_cones())
      if (!kernel_face_check(c, ss)) return false;
  return true;
}

}  // namespace corners
