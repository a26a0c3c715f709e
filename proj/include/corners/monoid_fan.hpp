#pragma once

// Sparse integer vectors over named coordinates, unimodular simplicial cones
// and fans, star subdivision, and the sign tests used for lifting rational
// combinations of boundary defining functions.

#include "corners/fourier_motzkin.hpp"
#include "corners/linalg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace corners {

class MonoidVector {
 public:
  using Coords = std::map<Label, Integer>;

  MonoidVector() = default;
  explicit MonoidVector(Coords c) : coords_(std::move(c)) { prune(); }
  MonoidVector(std::initializer_list<std::pair<const Label, Integer>> c) : coords_(c) { prune(); }

  static MonoidVector unit(const Label& l) { return MonoidVector(Coords{{l, 1}}); }

  const Coords& coords() const { return coords_; }
  Integer operator[](const Label& l) const {
    auto it = coords_.find(l);
    return it == coords_.end() ? Integer(0) : it->second;
  }
  bool is_zero() const { return coords_.empty(); }
  bool is_nonnegative() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const auto& kv) { return kv.second > 0; });
  }
  std::set<Label> support() const {
    std::set<Label> s;
    for (const auto& kv : coords_) s.insert(kv.first);
    return s;
  }

  MonoidVector& operator+=(const MonoidVector& o) {
    for (const auto& [l, x] : o.coords_) coords_[l] += x;
    prune();
    return *this;
  }
  MonoidVector& operator-=(const MonoidVector& o) {
    for (const auto& [l, x] : o.coords_) coords_[l] -= x;
    prune();
    return *this;
  }
  friend MonoidVector operator+(MonoidVector a, const MonoidVector& b) { return a += b; }
  friend MonoidVector operator-(MonoidVector a, const MonoidVector& b) { return a -= b; }
  friend MonoidVector operator*(const Integer& k, MonoidVector v) {
    for (auto& kv : v.coords_) kv.second *= k;
    v.prune();
    return v;
  }

  friend bool operator==(const MonoidVector& a, const MonoidVector& b) { return a.coords_ == b.coords_; }
  friend bool operator!=(const MonoidVector& a, const MonoidVector& b) { return !(a == b); }
  friend bool operator<(const MonoidVector& a, const MonoidVector& b) { return a.coords_ < b.coords_; }

  // "H1+2*H2-H3"; the zero vector prints as "0".
  std::string str() const {
    if (coords_.empty()) return "0";
    std::string out;
    for (const auto& [l, x] : coords_) {
      Integer a = abs(x);
      if (x < 0)
        out += "-";
      else if (!out.empty())
        out += "+";
      if (a != 1) out += a.str() + "*";
      out += l;
    }
    return out;
  }

 private:
  void prune() {
    for (auto it = coords_.begin(); it != coords_.end();)
      it = it->second == 0 ? coords_.erase(it) : std::next(it);
  }
  Coords coords_;
};

// The pairing of a functional with a vector, both written in the same
// coordinates.
inline Integer pairing(const MonoidVector& f, const MonoidVector& v) {
  Integer s = 0;
  for (const auto& [l, x] : v.coords()) s += x * f[l];
  return s;
}

// Simplicial cone given by its generators, stored sorted.
class Cone {
 public:
  Cone() = default;
  explicit Cone(std::vector<MonoidVector> gens) : gens_(std::move(gens)) {
    std::sort(gens_.begin(), gens_.end());
    if (std::adjacent_find(gens_.begin(), gens_.end()) != gens_.end())
      throw InputError("cone has a repeated generator");
    for (const auto& g : gens_)
      if (g.is_zero() || !g.is_nonnegative()) throw InputError("cone generator " + g.str() + " is not a nonzero nonnegative vector");
  }

  const std::vector<MonoidVector>& generators() const { return gens_; }
  std::size_t dimension() const { return gens_.size(); }
  bool has_generator(const MonoidVector& v) const { return std::binary_search(gens_.begin(), gens_.end(), v); }
  bool has_face(const Cone& f) const { return std::includes(gens_.begin(), gens_.end(), f.gens_.begin(), f.gens_.end()); }
  std::set<Label> support() const {
    std::set<Label> s;
    for (const auto& g : gens_)
      for (const auto& kv : g.coords()) s.insert(kv.first);
    return s;
  }
  // All faces, including the zero cone and the cone itself.
  std::vector<Cone> faces() const {
    std::vector<Cone> out;
    const std::size_t n = gens_.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<MonoidVector> g;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) g.push_back(gens_[i]);
      out.emplace_back(std::move(g));
    }
    return out;
  }

  std::string str() const {
    std::string out = "<";
    for (std::size_t i = 0; i < gens_.size(); ++i) out += (i ? ", " : "") + gens_[i].str();
    return out + ">";
  }

  friend bool operator==(const Cone& a, const Cone& b) { return a.gens_ == b.gens_; }
  friend bool operator!=(const Cone& a, const Cone& b) { return !(a == b); }
  friend bool operator<(const Cone& a, const Cone& b) { return a.gens_ < b.gens_; }

 private:
  std::vector<MonoidVector> gens_;
};

inline void require_support_in(const MonoidVector& v, const std::set<Label>& ambient) {
  for (const auto& kv : v.coords())
    if (!ambient.count(kv.first))
      throw InputError("vector " + v.str() + " has coordinate '" + kv.first + "' outside the ambient labels");
}

// Coefficients of v in the generators of the cone (in generator order), or
// nullopt when v is not in the cone.  `ambient` bounds the admissible
// coordinates of v.
inline std::optional<std::vector<Rational>> cone_membership(const Cone& c, const MonoidVector& v,
                                                            const std::set<Label>& ambient) {
  require_support_in(v, ambient);
  std::set<Label> coords = c.support();
  for (const auto& kv : v.coords()) coords.insert(kv.first);
  const auto& g = c.generators();
  RationalMatrix a;
  RationalVector b;
  for (const auto& l : coords) {
    RationalVector row;
    for (const auto& gen : g) row.emplace_back(gen[l]);
    a.push_back(std::move(row));
    b.emplace_back(v[l]);
  }
  auto x = solve_unique(a, b, g.size());
  if (!x) return std::nullopt;
  for (const auto& q : *x)
    if (q < 0) return std::nullopt;
  return x;
}

inline std::optional<std::vector<Rational>> cone_membership(const Cone& c, const MonoidVector& v) {
  return cone_membership(c, v, c.support());
}

class Fan {
 public:
  Fan() = default;
  Fan(std::set<Label> ambient, std::set<Cone> max_cones)
      : ambient_(std::move(ambient)), cones_(std::move(max_cones)) {
    for (const auto& c : cones_)
      for (const auto& g : c.generators()) require_support_in(g, ambient_);
  }

  // The single orthant cone spanned by the unit vectors.
  static Fan orthant(const std::set<Label>& ambient) {
    std::vector<MonoidVector> g;
    for (const auto& l : ambient) g.push_back(MonoidVector::unit(l));
    return Fan(ambient, {Cone(std::move(g))});
  }

  const std::set<Label>& ambient() const { return ambient_; }
  const std::set<Cone>& max_cones() const { return cones_; }

  std::set<MonoidVector> rays() const {
    std::set<MonoidVector> r;
    for (const auto& c : cones_) r.insert(c.generators().begin(), c.generators().end());
    return r;
  }
  bool has_cone(const Cone& f) const {
    return std::any_of(cones_.begin(), cones_.end(), [&](const Cone& c) { return c.has_face(f); });
  }
  std::set<Cone> all_cones() const {
    std::set<Cone> out;
    for (const auto& c : cones_)
      for (auto& f : c.faces()) out.insert(std::move(f));
    return out;
  }
  // Maximal cones of the subfan supported on the coordinates in `sub`.
  std::set<Cone> restricted_to(const std::set<Label>& sub) const {
    std::set<Cone> faces;
    for (const auto& c : cones_) {
      std::vector<MonoidVector> g;
      for (const auto& gen : c.generators())
        if (std::all_of(gen.coords().begin(), gen.coords().end(),
                        [&](const auto& kv) { return sub.count(kv.first) > 0; }))
          g.push_back(gen);
      faces.insert(Cone(std::move(g)));
    }
    std::set<Cone> out;
    for (const auto& f : faces)
      if (std::none_of(faces.begin(), faces.end(), [&](const Cone& o) { return o != f && o.has_face(f); }))
        out.insert(f);
    return out;
  }

  // Structural violations: non-unimodular or lower-dimensional maximal cones,
  // and failures of the covering / unique-relative-interior property on all
  // nonnegative integer vectors with coordinate sum at most `bound`.
  std::vector<std::string> violations(int bound = -1) const;

  friend bool operator==(const Fan& a, const Fan& b) { return a.ambient_ == b.ambient_ && a.cones_ == b.cones_; }
  friend bool operator!=(const Fan& a, const Fan& b) { return !(a == b); }

 private:
  std::set<Label> ambient_;
  std::set<Cone> cones_;
};

inline bool fans_equal(const Fan& a, const Fan& b) { return a == b; }

// Calls fn on every nonnegative integer vector over `labels` with coordinate
// sum at most `bound`.
inline void for_each_small_vector(const std::set<Label>& labels, int bound,
                                  const std::function<void(const MonoidVector&)>& fn) {
  std::vector<Label> ls(labels.begin(), labels.end());
  std::vector<int> x(ls.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == ls.size()) {
      MonoidVector::Coords c;
      for (std::size_t j = 0; j < ls.size(); ++j) c[ls[j]] = x[j];
      fn(MonoidVector(std::move(c)));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      x[i] = k;
      rec(i + 1, left - k);
    }
    x[i] = 0;
  };
  rec(0, bound);
}

inline std::vector<std::string> Fan::violations(int bound) const {
  std::vector<std::string> out;
  const std::vector<Label> ls(ambient_.begin(), ambient_.end());
  for (const auto& c : cones_) {
    if (c.dimension() != ls.size()) {
      out.push_back("cone " + c.str() + " is not full-dimensional");
      continue;
    }
    std::vector<std::vector<Integer>> m;
    for (const auto& g : c.generators()) {
      std::vector<Integer> row;
      for (const auto& l : ls) row.push_back(g[l]);
      m.push_back(std::move(row));
    }
    Integer d = determinant(m);
    if (abs(d) != 1) out.push_back("cone " + c.str() + " has determinant " + d.str());
  }
  if (!out.empty()) return out;
  if (bound < 0) bound = ls.size() <= 4 ? 5 : 2;
  const auto faces = all_cones();
  for_each_small_vector(ambient_, bound, [&](const MonoidVector& v) {
    int hits = 0;
    for (const auto& f : faces) {
      auto x = cone_membership(f, v, ambient_);
      if (x && std::all_of(x->begin(), x->end(), [](const Rational& q) { return q > 0; })) ++hits;
    }
    if (hits != 1)
      out.push_back("vector " + v.str() + " lies in the relative interior of " + std::to_string(hits) + " cones");
  });
  return out;
}

// Replaces every maximal cone containing `center` by the cones obtained by
// swapping one generator of the center for the sum of the center's
// generators.
inline Fan star_subdivide(const Fan& fan, const Cone& center) {
  if (center.dimension() == 0 || !fan.has_cone(center))
    throw DomainError("blow-up center " + center.str() + " is not a cone of the fan");
  MonoidVector v;
  for (const auto& g : center.generators()) v += g;
  std::set<Cone> out;
  for (const auto& c : fan.max_cones()) {
    if (!c.has_face(center)) {
      out.insert(c);
      continue;
    }
    for (const auto& g : center.generators()) {
      std::vector<MonoidVector> gens;
      for (const auto& h : c.generators()) gens.push_back(h == g ? v : h);
      out.insert(Cone(std::move(gens)));
    }
  }
  return Fan(fan.ambient(), std::move(out));
}

struct SignVerdict {
  enum class Kind { NonNegative, NonPositive, Zero, Indeterminate };
  Kind kind = Kind::Zero;
  std::vector<MonoidVector> positive;  // generators with positive pairing
  std::vector<MonoidVector> negative;  // generators with negative pairing
};

inline std::string to_string(SignVerdict::Kind k) {
  switch (k) {
    case SignVerdict::Kind::NonNegative: return "non_negative";
    case SignVerdict::Kind::NonPositive: return "non_positive";
    case SignVerdict::Kind::Zero: return "zero";
    case SignVerdict::Kind::Indeterminate: return "indeterminate";
  }
  return "?";
}

inline SignVerdict functional_sign(const Cone& c, const MonoidVector& f) {
  SignVerdict s;
  for (const auto& g : c.generators()) {
    Integer p = pairing(f, g);
    if (p > 0) s.positive.push_back(g);
    if (p < 0) s.negative.push_back(g);
  }
  using K = SignVerdict::Kind;
  if (s.positive.empty())
    s.kind = s.negative.empty() ? K::Zero : K::NonPositive;
  else
    s.kind = s.negative.empty() ? K::NonNegative : K::Indeterminate;
  return s;
}

// True when the face spanned by the generators annihilated by every
// functional is the full intersection of the cone with their common kernel,
// i.e. no nonnegative, not-all-zero combination of the remaining generators
// pairs to zero with every functional.
inline bool kernel_face_check(const Cone& c, const std::vector<MonoidVector>& fs) {
  std::vector<std::vector<Integer>> cols;  // pairing vectors of non-kernel generators
  for (const auto& g : c.generators()) {
    std::vector<Integer> p;
    bool zero = true;
    for (const auto& f : fs) {
      p.push_back(pairing(f, g));
      if (p.back() != 0) zero = false;
    }
    if (!zero) cols.push_back(std::move(p));
  }
  if (cols.empty()) return true;
  const std::size_t n = cols.size();
  LinearSystem sys;
  sys.vars = n;
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector a(n, Rational(0));
    a[i] = -1;
    sys.add_le(std::move(a), 0);
  }
  sys.add_eq(RationalVector(n, Rational(1)), 1);
  for (std::size_t j = 0; j < fs.size(); ++j) {
    RationalVector a;
    for (std::size_t i = 0; i < n; ++i) a.emplace_back(cols[i][j]);
    sys.add_eq(std::move(a), 0);
  }
  return !feasible(std::move(sys));
}

}  // namespace corners
