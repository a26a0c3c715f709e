#pragma once

// Monomial vector fields in standard form coordinates (boundary coordinates
// x1..xn, interior blocks y1..yn and z), the edge, wedge and phi frames, and
// pushforward along monomial maps.

#include "corners/linalg.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace corners {

// x^a with integer (possibly negative) exponents; zero exponents pruned.
using Exponents = std::map<Label, int>;

inline Exponents prune(Exponents e) {
  for (auto it = e.begin(); it != e.end();) it = it->second == 0 ? e.erase(it) : std::next(it);
  return e;
}

inline Exponents operator+(Exponents a, const Exponents& b) {
  for (const auto& [k, v] : b) a[k] += v;
  return prune(std::move(a));
}

inline Exponents monomial(std::initializer_list<Label> xs) {
  Exponents e;
  for (const auto& x : xs) e[x] += 1;
  return e;
}

// x_a * ... * x_b, empty when a > b.
inline Exponents range_monomial(int a, int b, int power = 1) {
  Exponents e;
  for (int i = a; i <= b; ++i) e["x" + std::to_string(i)] = power;
  return e;
}

inline std::string monomial_str(const Exponents& e) {
  std::string s;
  for (const auto& [k, v] : e) {
    if (!s.empty()) s += "*";
    s += k;
    if (v != 1) s += "^" + std::to_string(v);
  }
  return s;
}

// A polynomial in the coordinates, for applying fields to functions.
using Polynomial = std::map<Exponents, Integer>;

class MonomialVectorField {
 public:
  // (direction, exponents) -> coefficient
  using Key = std::pair<Label, Exponents>;

  MonomialVectorField() = default;

  // c * x^e * d/d(dir)
  static MonomialVectorField term(const Label& dir, const Exponents& e = {}, const Integer& c = 1) {
    MonomialVectorField v;
    v.add(dir, e, c);
    return v;
  }

  void add(const Label& dir, const Exponents& e, const Integer& c) {
    if (c == 0) return;
    auto key = Key{dir, prune(e)};
    auto& slot = terms_[key];
    slot += c;
    if (slot == 0) terms_.erase(key);
  }

  const std::map<Key, Integer>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  std::set<Label> directions() const {
    std::set<Label> out;
    for (const auto& [k, c] : terms_) out.insert(k.first);
    return out;
  }

  MonomialVectorField& operator+=(const MonomialVectorField& o) {
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
    return *this;
  }
  friend MonomialVectorField operator+(MonomialVectorField a, const MonomialVectorField& b) { return a += b; }
  friend MonomialVectorField operator-(MonomialVectorField a, const MonomialVectorField& b) {
    for (const auto& [k, c] : b.terms_) a.add(k.first, k.second, -c);
    return a;
  }
  friend MonomialVectorField operator*(const Integer& s, const MonomialVectorField& v) {
    MonomialVectorField out;
    for (const auto& [k, c] : v.terms_) out.add(k.first, k.second, s * c);
    return out;
  }
  // Multiplication by a monomial.
  friend MonomialVectorField operator*(const Exponents& m, const MonomialVectorField& v) {
    MonomialVectorField out;
    for (const auto& [k, c] : v.terms_) out.add(k.first, k.second + m, c);
    return out;
  }
  friend bool operator==(const MonomialVectorField& a, const MonomialVectorField& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const MonomialVectorField& a, const MonomialVectorField& b) { return !(a == b); }

  // v(x^e) as a polynomial.
  Polynomial apply(const Exponents& e) const {
    Polynomial out;
    for (const auto& [k, c] : terms_) {
      auto it = e.find(k.first);
      if (it == e.end()) continue;
      Exponents m = k.second + e;
      m[k.first] -= 1;
      m = prune(std::move(m));
      out[m] += c * it->second;
      if (out[m] == 0) out.erase(m);
    }
    return out;
  }

  // Drops every term whose direction is not in `keep`.
  MonomialVectorField restricted_to(const std::set<Label>& keep) const {
    MonomialVectorField out;
    for (const auto& [k, c] : terms_)
      if (keep.count(k.first)) out.add(k.first, k.second, c);
    return out;
  }

  MonomialVectorField renamed(const std::map<Label, Label>& r) const {
    auto name = [&](const Label& l) {
      auto it = r.find(l);
      return it == r.end() ? l : it->second;
    };
    MonomialVectorField out;
    for (const auto& [k, c] : terms_) {
      Exponents e;
      for (const auto& [x, p] : k.second) e[name(x)] += p;
      out.add(name(k.first), e, c);
    }
    return out;
  }

  // "x1^2*x2*d_x1 - t*d_t"; "0" when empty.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : terms_) {
      Integer a = c < 0 ? Integer(-c) : c;
      if (s.empty())
        s += c < 0 ? "-" : "";
      else
        s += c < 0 ? " - " : " + ";
      std::string part = a == 1 ? "" : to_string(a);
      auto m = monomial_str(k.second);
      if (!m.empty()) part += (part.empty() ? "" : "*") + m;
      s += part + (part.empty() ? "" : "*") + "d_" + k.first;
    }
    return s;
  }

 private:
  std::map<Key, Integer> terms_;
};

inline MonomialVectorField d(const Label& dir, const Exponents& e = {}) { return MonomialVectorField::term(dir, e); }

enum class FrameKind { Edge, Wedge, Phi };

inline std::string to_string(FrameKind k) {
  switch (k) {
    case FrameKind::Edge: return "edge";
    case FrameKind::Wedge: return "wedge";
    case FrameKind::Phi: return "phi";
  }
  return "";
}

inline FrameKind parse_frame_kind(const std::string& s) {
  if (s == "edge") return FrameKind::Edge;
  if (s == "wedge") return FrameKind::Wedge;
  if (s == "phi") return FrameKind::Phi;
  throw InputError("unknown frame kind '" + s + "'");
}

inline Label xc(int i) { return "x" + std::to_string(i); }
inline Label yc(int i) { return "y" + std::to_string(i); }

struct Frame {
  FrameKind kind = FrameKind::Edge;
  int n = 0;
  // Dimensions of y1..yn and z; each block is one symbolic coordinate.
  std::vector<std::size_t> block_dims;
  std::vector<MonomialVectorField> fields;

  std::size_t rank() const {
    std::size_t r = static_cast<std::size_t>(n);
    for (auto b : block_dims) r += b;
    return r;
  }
};

// The frames in the order y1-field, x1-field, ..., yn-field, xn-field, z-field.
inline Frame make_frame(FrameKind kind, int n, std::vector<std::size_t> block_dims = {}) {
  if (n < 0) throw InputError("frame depth must be non-negative");
  if (block_dims.empty()) block_dims.assign(static_cast<std::size_t>(n) + 1, 1);
  if (block_dims.size() != static_cast<std::size_t>(n) + 1)
    throw InputError("expected " + std::to_string(n + 1) + " block dimensions");
  Frame f{kind, n, std::move(block_dims), {}};
  auto v = [&](int k) { return range_monomial(k, n); };
  auto w = [&](int k) { return range_monomial(1, k, -1); };
  for (int k = 1; k <= n; ++k) {
    switch (kind) {
      case FrameKind::Edge:
        f.fields.push_back(d(yc(k), v(k)));
        f.fields.push_back(d(xc(k), v(k)));
        break;
      case FrameKind::Wedge:
        f.fields.push_back(d(yc(k), w(k - 1)));
        f.fields.push_back(d(xc(k), w(k - 1)));
        break;
      case FrameKind::Phi:
        f.fields.push_back(d(yc(k), v(k)));
        if (k == 1)
          f.fields.push_back(d(xc(1), v(1) + monomial({xc(1)})));
        else
          f.fields.push_back(v(k) * (d(xc(k), monomial({xc(k)})) - d(xc(k - 1), monomial({xc(k - 1)}))));
        break;
    }
  }
  f.fields.push_back(kind == FrameKind::Wedge ? d("z", w(n)) : d("z"));
  return f;
}

// Target coordinates are monomials in the source boundary coordinates
// (t = x^nu, including pass-through boundary coordinates as nu = e_i) or
// pass-through interior coordinates.  Source coordinates that appear in no
// target are projected away.
struct MonomialMap {
  std::map<Label, Exponents> boundary;  // target -> nu
  std::map<Label, Label> interior;      // target -> source

  void check() const {
    for (const auto& [t, nu] : boundary)
      for (const auto& [x, p] : nu)
        if (p < 0) throw InputError("monomial map exponent for " + t + " is negative");
  }
};

inline MonomialMap identity_monomial_map(const std::set<Label>& boundary, const std::set<Label>& interior) {
  MonomialMap m;
  for (const auto& x : boundary) m.boundary[x] = monomial({x});
  for (const auto& y : interior) m.interior[y] = y;
  return m;
}

// n o m: apply m first, then n.
inline MonomialMap compose(const MonomialMap& n, const MonomialMap& m) {
  MonomialMap out;
  for (const auto& [t, mu] : n.boundary) {
    Exponents e;
    for (const auto& [s, p] : mu) {
      auto it = m.boundary.find(s);
      if (it == m.boundary.end()) throw InputError("coordinate " + s + " is not a boundary target");
      for (const auto& [x, q] : it->second) e[x] += p * q;
    }
    out.boundary[t] = prune(std::move(e));
  }
  for (const auto& [t, s] : n.interior) {
    auto it = m.interior.find(s);
    if (it == m.interior.end()) throw InputError("coordinate " + s + " is not an interior target");
    out.interior[t] = it->second;
  }
  return out;
}

// Chain rule only: the image with coefficients still written in the source
// coordinates and directions in the target coordinates.  Terms cancel
// before anything is rewritten.
inline MonomialVectorField chain_rule(const MonomialVectorField& v, const MonomialMap& m) {
  m.check();
  MonomialVectorField out;
  for (const auto& [key, c] : v.terms()) {
    const auto& [dir, a] = key;
    for (const auto& [t, nu] : m.boundary) {
      auto it = nu.find(dir);
      if (it == nu.end()) continue;
      Exponents e = a + nu;
      e[dir] -= 1;
      out.add(t, e, c * it->second);
    }
    for (const auto& [t, s] : m.interior)
      if (s == dir) out.add(t, a, c);
  }
  return out;
}

// Rewrites source monomials as monomials in the boundary targets; throws
// DomainError when a coefficient is not a function of the targets.  With
// `vanish_on`, terms divisible by that source coordinate are dropped first
// (restriction to its zero set).
inline MonomialVectorField rewrite_in_targets(const MonomialVectorField& v, const MonomialMap& m,
                                              const std::optional<Label>& vanish_on = std::nullopt) {
  std::vector<Label> targets;
  std::set<Label> sources;
  for (const auto& [t, nu] : m.boundary) {
    targets.push_back(t);
    for (const auto& [x, p] : nu) sources.insert(x);
  }
  MonomialVectorField out;
  for (const auto& [key, c] : v.terms()) {
    const auto& [dir, e] = key;
    if (vanish_on) {
      auto it = e.find(*vanish_on);
      if (it != e.end() && it->second > 0) continue;
    }
    std::set<Label> rows = sources;
    for (const auto& [x, p] : e) rows.insert(x);
    RationalMatrix a;
    RationalVector b;
    for (const auto& x : rows) {
      RationalVector r;
      for (const auto& t : targets) {
        auto it = m.boundary.at(t).find(x);
        r.push_back(it == m.boundary.at(t).end() ? 0 : it->second);
      }
      a.push_back(std::move(r));
      auto it = e.find(x);
      b.push_back(it == e.end() ? 0 : it->second);
    }
    auto sol = solve_unique(a, b, targets.size());
    if (!sol) throw DomainError("coefficient " + monomial_str(e) + " of d_" + dir + " is not a function of the targets");
    Exponents te;
    for (std::size_t j = 0; j < targets.size(); ++j) {
      if (!is_integral((*sol)[j])) throw DomainError("coefficient " + monomial_str(e) + " is not a target monomial");
      te[targets[j]] = static_cast<int>(to_integer((*sol)[j]));
    }
    out.add(dir, te, c);
  }
  return out;
}

inline MonomialVectorField pushforward(const MonomialVectorField& v, const MonomialMap& m,
                                       const std::optional<Label>& vanish_on = std::nullopt) {
  return rewrite_in_targets(chain_rule(v, m), m, vanish_on);
}

// The compressed projections near H_k.
//   phi:   (y1,x1,..,yn,xn,z) -> (y1,x1,..,x_{k-1},yk,t),  t = xk...xn
//   wedge: (y1,x1,..,yn,xn,z) -> (t,y_{k+1},x_{k+1},..,yn,xn,z),  t = x1...xk
inline MonomialMap compressed_projection(FrameKind kind, int n, int k) {
  if (k < 1 || k > n) throw InputError("need 1 <= k <= n");
  MonomialMap m;
  if (kind == FrameKind::Phi) {
    for (int i = 1; i < k; ++i) m.boundary[xc(i)] = monomial({xc(i)});
    m.boundary["t"] = range_monomial(k, n);
    for (int i = 1; i <= k; ++i) m.interior[yc(i)] = yc(i);
  } else if (kind == FrameKind::Wedge) {
    m.boundary["t"] = range_monomial(1, k);
    for (int i = k + 1; i <= n; ++i) {
      m.boundary[xc(i)] = monomial({xc(i)});
      m.interior[yc(i)] = yc(i);
    }
    m.interior["z"] = "z";
  } else {
    throw InputError("splitting is defined for phi and wedge frames");
  }
  return m;
}

// The displayed tables, image of each frame field in order.  For the wedge
// table the images are over H_k = {xk = 0}; the first entries, before
// restriction, are x_{j+1}...x_k d_t.
inline std::vector<MonomialVectorField> expected_splitting_table(FrameKind kind, int n, int k) {
  std::vector<MonomialVectorField> out;
  const Exponents t = monomial({"t"});
  if (kind == FrameKind::Phi) {
    for (int i = 1; i <= n; ++i) {
      if (i <= k)
        out.push_back(d(yc(i), range_monomial(i, k - 1) + t));
      else
        out.push_back({});
      if (i == 1) {
        if (k == 1)
          out.push_back(d("t", t + t));
        else
          out.push_back(d(xc(1), range_monomial(1, k - 1) + t + monomial({xc(1)})));
      } else if (i < k) {
        out.push_back((range_monomial(i, k - 1) + t) *
                      (d(xc(i), monomial({xc(i)})) - d(xc(i - 1), monomial({xc(i - 1)}))));
      } else if (i == k) {
        out.push_back(t * (d("t", t) - d(xc(k - 1), monomial({xc(k - 1)}))));
      } else {
        out.push_back({});
      }
    }
    out.push_back({});
  } else {
    for (int j = 1; j <= n; ++j) {
      if (j <= k) {
        out.push_back({});
        out.push_back(j < k ? MonomialVectorField{} : d("t"));
      } else {
        const Exponents w = range_monomial(k + 1, j - 1, -1) + Exponents{{"t", -1}};
        out.push_back(d(yc(j), w));
        out.push_back(d(xc(j), w));
      }
    }
    out.push_back(d("z", range_monomial(k + 1, n, -1) + Exponents{{"t", -1}}));
  }
  return out;
}

struct SplittingReport {
  bool table_ok = false;
  std::vector<MonomialVectorField> images;
  std::vector<MonomialVectorField> kernel_frame;  // source fields with zero image
  std::vector<MonomialVectorField> image_frame;   // nonzero images
  std::vector<std::string> problems;
};

inline SplittingReport verify_splitting(FrameKind kind, int n, int k) {
  SplittingReport r;
  const auto frame = make_frame(kind, n);
  const auto map = compressed_projection(kind, n, k);
  const std::optional<Label> restrict = kind == FrameKind::Wedge ? std::optional<Label>(xc(k)) : std::nullopt;
  for (const auto& v : frame.fields) {
    auto img = pushforward(v, map, restrict);
    (img.is_zero() ? r.kernel_frame : r.image_frame).push_back(img.is_zero() ? v : img);
    r.images.push_back(std::move(img));
  }
  const auto expect = expected_splitting_table(kind, n, k);
  for (std::size_t i = 0; i < expect.size(); ++i)
    if (r.images[i] != expect[i])
      r.problems.push_back("field " + frame.fields[i].str() + " maps to " + r.images[i].str() + ", table has " +
                           expect[i].str());
  if (kind == FrameKind::Wedge)
    for (int j = 1; j < k; ++j) {
      auto raw = chain_rule(frame.fields[2 * static_cast<std::size_t>(j) - 1], map);
      if (raw != d("t", range_monomial(j + 1, k)))
        r.problems.push_back("unrestricted image of " + frame.fields[2 * static_cast<std::size_t>(j) - 1].str() +
                             " is " + raw.str());
    }
  r.table_ok = r.problems.empty();
  return r;
}

// v(x1...xn) is divisible by (x1...xn)^2.
inline bool annihilates_to_second_order(const MonomialVectorField& v, int n) {
  for (const auto& [m, c] : v.apply(range_monomial(1, n)))
    for (int i = 1; i <= n; ++i) {
      auto it = m.find(xc(i));
      if (it == m.end() || it->second < 2) return false;
    }
  return true;
}

}  // namespace corners
