#pragma once

// Finite strict partial orders on labels, stored as sets of (less, greater)
// pairs.

#include "corners/arith.hpp"

#include <functional>
#include <map>
#include <set>
#include <vector>

namespace corners {

using Relation = std::set<std::pair<Label, Label>>;

inline Relation transitive_closure(Relation r) {
  std::map<Label, std::set<Label>> up;
  for (const auto& [a, b] : r) up[a].insert(b);
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [a, bs] : up) {
      std::set<Label> add;
      for (const auto& b : bs) {
        auto it = up.find(b);
        if (it == up.end()) continue;
        for (const auto& c : it->second)
          if (!bs.count(c)) add.insert(c);
      }
      if (!add.empty()) {
        bs.insert(add.begin(), add.end());
        changed = true;
      }
    }
  }
  Relation out;
  for (const auto& [a, bs] : up)
    for (const auto& b : bs) out.emplace(a, b);
  return out;
}

// Covering pairs of a transitively closed relation.
inline Relation covering_relation(const Relation& closed) {
  std::map<Label, std::set<Label>> up;
  for (const auto& [a, b] : closed) up[a].insert(b);
  Relation out;
  for (const auto& [a, b] : closed) {
    bool cover = true;
    for (const auto& c : up[a])
      if (c != b && closed.count({c, b})) {
        cover = false;
        break;
      }
    if (cover) out.emplace(a, b);
  }
  return out;
}

// Maximal chains of a finite poset given by a strict comparison.  Chains are
// listed from the bottom up.
template <class T, class Less>
std::vector<std::vector<T>> maximal_chains(const std::vector<T>& elems, Less less) {
  const std::size_t n = elems.size();
  std::vector<std::vector<std::size_t>> covers(n);
  std::vector<bool> minimal(n, true);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!less(elems[i], elems[j])) continue;
      minimal[j] = false;
      bool cover = true;
      for (std::size_t k = 0; k < n && cover; ++k)
        if (less(elems[i], elems[k]) && less(elems[k], elems[j])) cover = false;
      if (cover) covers[i].push_back(j);
    }
  std::vector<std::vector<T>> out;
  std::vector<T> path;
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    path.push_back(elems[i]);
    if (covers[i].empty()) out.push_back(path);
    for (auto j : covers[i]) walk(j);
    path.pop_back();
  };
  for (std::size_t i = 0; i < n; ++i)
    if (minimal[i]) walk(i);
  return out;
}

// A linear extension of the strict order `less` on `elems`.  `pick` chooses
// among the currently minimal remaining elements (by index into the
// candidate list); the default takes the first, giving a deterministic order.
template <class T, class Less>
std::vector<T> linear_extension(std::vector<T> elems, Less less,
                                const std::function<std::size_t(std::size_t)>& pick = {}) {
  std::vector<T> out;
  while (!elems.empty()) {
    std::vector<std::size_t> mins;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      bool minimal = true;
      for (std::size_t j = 0; j < elems.size() && minimal; ++j)
        if (less(elems[j], elems[i])) minimal = false;
      if (minimal) mins.push_back(i);
    }
    std::size_t k = pick ? pick(mins.size()) : 0;
    out.push_back(elems[mins[k]]);
    elems.erase(elems.begin() + mins[k]);
  }
  return out;
}

}  // namespace corners
