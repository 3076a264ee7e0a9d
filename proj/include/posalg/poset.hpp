#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "posalg/errors.hpp"
#include "posalg/subset.hpp"

namespace posalg {

inline constexpr std::size_t kMaxPosetSize = 64;

inline std::string join(const std::vector<std::string>& v, const std::string& sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

/// Finite poset with string labels. Element indices follow the order in which
/// labels were supplied; `le` is stored as the reflexive-transitive closure.
class Poset {
 public:
  Poset() = default;

  static Poset make(std::string name, std::vector<std::string> elements,
                    const std::vector<std::pair<std::string, std::string>>& relations) {
    Poset p;
    p.name_ = std::move(name);
    if (elements.size() > kMaxPosetSize)
      throw PosetTooLarge("poset has " + std::to_string(elements.size()) + " elements, limit is 64");
    p.labels_ = std::move(elements);
    for (std::size_t i = 0; i < p.labels_.size(); ++i) {
      if (!p.index_.emplace(p.labels_[i], i).second)
        throw DuplicateLabel("duplicate element label '" + p.labels_[i] + "'");
    }
    const std::size_t n = p.labels_.size();
    p.up_.assign(n, Subset());
    for (std::size_t i = 0; i < n; ++i) p.up_[i].insert(i);
    for (const auto& [a, b] : relations) p.up_[p.index(a)].insert(p.index(b));
    // Warshall closure on rows.
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (p.up_[i].contains(k)) p.up_[i] |= p.up_[k];
    p.down_.assign(n, Subset());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j : p.up_[i]) p.down_[j].insert(i);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j : p.up_[i] - Subset::single(i))
        if (p.up_[j].contains(i))
          throw CycleError("relations force " + p.labels_[i] + " <= " + p.labels_[j] + " <= " + p.labels_[i]);
    return p;
  }

  const std::string& name() const { return name_; }
  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  std::optional<std::size_t> find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw UnknownLabel("unknown element label '" + label + "'");
    return it->second;
  }

  bool le(std::size_t i, std::size_t j) const { return up_[i].contains(j); }
  bool lt(std::size_t i, std::size_t j) const { return i != j && le(i, j); }
  bool comparable(std::size_t i, std::size_t j) const { return le(i, j) || le(j, i); }

  Subset all() const { return Subset::first(size()); }
  /// {i<=}
  Subset up(std::size_t i) const { return up_[i]; }
  /// {<=i}
  Subset down(std::size_t i) const { return down_[i]; }
  Subset strictly_above(std::size_t i) const { return up_[i] - Subset::single(i); }
  Subset strictly_below(std::size_t i) const { return down_[i] - Subset::single(i); }
  Subset comparable_with(std::size_t i) const { return up_[i] | down_[i]; }

  Subset subset_of(const std::vector<std::string>& labels) const {
    Subset s;
    for (const auto& l : labels) s.insert(index(l));
    return s;
  }
  std::vector<std::string> labels_of(Subset s) const {
    std::vector<std::string> out;
    for (std::size_t i : s) out.push_back(labels_[i]);
    return out;
  }

  /// Subposet on `w`, keeping the relative order of indices.
  Poset induced(Subset w, std::string name) const {
    std::vector<std::string> elems;
    std::vector<std::pair<std::string, std::string>> rel;
    for (std::size_t i : w) {
      elems.push_back(labels_[i]);
      for (std::size_t j : up_[i] & w)
        if (j != i) rel.emplace_back(labels_[i], labels_[j]);
    }
    return make(std::move(name), std::move(elems), rel);
  }

  /// Structural equality: same name, same labels in the same order, same order relation.
  bool operator==(const Poset& o) const {
    return name_ == o.name_ && labels_ == o.labels_ && up_ == o.up_;
  }

  /// Same labels and order relation, ignoring the name.
  bool same_order(const Poset& o) const { return labels_ == o.labels_ && up_ == o.up_; }

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::map<std::string, std::size_t> index_;
  std::vector<Subset> up_;
  std::vector<Subset> down_;
};

using PosetPtr = std::shared_ptr<const Poset>;

inline PosetPtr share(Poset p) { return std::make_shared<const Poset>(std::move(p)); }

struct LowerSet {
  Subset elems;
  bool operator==(const LowerSet&) const = default;
  auto operator<=>(const LowerSet&) const = default;
};

struct UpperSet {
  Subset elems;
  bool operator==(const UpperSet&) const = default;
  auto operator<=>(const UpperSet&) const = default;
};

/// Strictly increasing list of element indices.
struct Chain {
  std::vector<std::size_t> elems;
  Subset mask() const {
    Subset s;
    for (auto i : elems) s.insert(i);
    return s;
  }
  bool operator==(const Chain&) const = default;
};

struct KrullFiltration {
  std::vector<Subset> layers;
  /// Cumulative unions J_1, J_2, ...
  std::vector<Subset> cumulative() const {
    std::vector<Subset> out;
    Subset acc;
    for (auto l : layers) out.push_back(acc |= l);
    return out;
  }
};

inline void require_within(const Poset& p, Subset s) {
  if (!s.subset_of(p.all())) throw UnknownLabel("subset refers to elements outside the poset");
}

inline Subset maximal_elements(const Poset& p, Subset w) {
  Subset out;
  for (std::size_t i : w)
    if (!p.strictly_above(i).intersects(w)) out.insert(i);
  return out;
}
inline Subset maximal_elements(const Poset& p) { return maximal_elements(p, p.all()); }

inline Subset minimal_elements(const Poset& p, Subset w) {
  Subset out;
  for (std::size_t i : w)
    if (!p.strictly_below(i).intersects(w)) out.insert(i);
  return out;
}
inline Subset minimal_elements(const Poset& p) { return minimal_elements(p, p.all()); }

inline LowerSet lower_closure(const Poset& p, Subset j) {
  require_within(p, j);
  Subset out;
  for (std::size_t i : j) out |= p.down(i);
  return {out};
}

inline UpperSet upper_closure(const Poset& p, Subset j) {
  require_within(p, j);
  Subset out;
  for (std::size_t i : j) out |= p.up(i);
  return {out};
}

/// Lower subset relative to `w`: closed downward among members of `w`.
inline bool is_lower_set(const Poset& p, Subset s, Subset w) {
  for (std::size_t i : s)
    if (!(p.down(i) & w).subset_of(s)) return false;
  return s.subset_of(w);
}
inline bool is_lower_set(const Poset& p, Subset s) { return is_lower_set(p, s, p.all()); }

inline bool is_upper_set(const Poset& p, Subset s, Subset w) {
  for (std::size_t i : s)
    if (!(p.up(i) & w).subset_of(s)) return false;
  return s.subset_of(w);
}
inline bool is_upper_set(const Poset& p, Subset s) { return is_upper_set(p, s, p.all()); }

inline LowerSet checked_lower_set(const Poset& p, Subset s) {
  require_within(p, s);
  if (!is_lower_set(p, s)) throw NotLowerSet("subset is not downward closed");
  return {s};
}

inline bool is_chain(const Poset& p, Subset s) {
  for (std::size_t i : s)
    if (!(s - p.comparable_with(i)).empty()) return false;
  return true;
}

inline bool is_antichain(const Poset& p, Subset s) {
  for (std::size_t i : s)
    if ((p.comparable_with(i) & s) != Subset::single(i)) return false;
  return true;
}

/// Covering pairs (i, j) of the order restricted to `w`.
inline std::vector<std::pair<std::size_t, std::size_t>> covering_pairs(const Poset& p, Subset w) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i : w)
    for (std::size_t j : p.strictly_above(i) & w)
      if ((p.strictly_above(i) & p.strictly_below(j) & w).empty()) out.emplace_back(i, j);
  return out;
}
inline std::vector<std::pair<std::size_t, std::size_t>> covering_pairs(const Poset& p) {
  return covering_pairs(p, p.all());
}

inline bool chain_label_less(const Poset& p, const Chain& a, const Chain& b) {
  return std::lexicographical_compare(
      a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(),
      [&](std::size_t x, std::size_t y) { return p.label(x) < p.label(y); });
}

/// Maximal chains of the subposet `w`: saturated paths from a minimal to a
/// maximal element of `w`. Sorted lexicographically by label sequence.
/// The empty subposet has exactly one maximal chain, the empty one.
inline std::vector<Chain> maximal_chains(const Poset& p, Subset w) {
  require_within(p, w);
  std::vector<Chain> out;
  if (w.empty()) {
    out.push_back({});
    return out;
  }
  std::vector<Subset> covers(p.size());
  for (auto [i, j] : covering_pairs(p, w)) covers[i].insert(j);
  Chain cur;
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    cur.elems.push_back(i);
    if (covers[i].empty()) out.push_back(cur);
    for (std::size_t j : covers[i]) walk(j);
    cur.elems.pop_back();
  };
  for (std::size_t m : minimal_elements(p, w)) walk(m);
  std::sort(out.begin(), out.end(), [&](const Chain& a, const Chain& b) { return chain_label_less(p, a, b); });
  return out;
}
inline std::vector<Chain> maximal_chains(const Poset& p) { return maximal_chains(p, p.all()); }

/// Every nonempty chain of the subposet `w`, as masks, in increasing mask order.
inline std::vector<Subset> all_chains(const Poset& p, Subset w) {
  std::vector<Subset> out;
  std::vector<std::size_t> elems(w.begin(), w.end());
  std::function<void(std::size_t, Subset)> grow = [&](std::size_t k, Subset cur) {
    if (k == elems.size()) {
      if (!cur.empty()) out.push_back(cur);
      return;
    }
    grow(k + 1, cur);
    if ((cur - p.comparable_with(elems[k])).empty()) grow(k + 1, cur | Subset::single(elems[k]));
  };
  grow(0, Subset());
  std::sort(out.begin(), out.end());
  return out;
}

/// Calls `fn` on every lower subset of `w` (relative to `w`).
inline void for_each_lower_set(const Poset& p, Subset w, const std::function<void(Subset)>& fn) {
  // Branch on a maximal undecided element: excluded, or included with everything below it.
  std::function<void(Subset, Subset)> rec = [&](Subset chosen, Subset undecided) {
    if (undecided.empty()) {
      fn(chosen);
      return;
    }
    std::size_t x = *maximal_elements(p, undecided).begin();
    rec(chosen, undecided - Subset::single(x));
    Subset below = p.down(x) & undecided;
    rec(chosen | below, undecided - below);
  };
  rec(Subset(), w);
}

inline std::vector<Subset> lower_sets(const Poset& p, Subset w) {
  std::vector<Subset> out;
  for_each_lower_set(p, w, [&](Subset s) { out.push_back(s); });
  std::sort(out.begin(), out.end(), [](Subset a, Subset b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}
inline std::vector<Subset> lower_sets(const Poset& p) { return lower_sets(p, p.all()); }

/// Every pair of elements of `w` has a lower bound in `w`. Empty `w` counts as directed.
inline bool is_downward_directed(const Poset& p, Subset w) {
  for (std::size_t i : w)
    for (std::size_t j : w)
      if (j > i && !(p.down(i) & p.down(j) & w).intersects(w)) return false;
  return true;
}
inline bool is_downward_directed(const Poset& p) { return is_downward_directed(p, p.all()); }

/// Some chain C of `w` has every element of `w` above one of its members.
/// A coinitial chain stays coinitial when extended, so maximal chains suffice.
inline std::optional<Chain> find_coinitial_chain(const Poset& p, Subset w) {
  for (const Chain& c : maximal_chains(p, w)) {
    Subset above;
    for (std::size_t i : c.elems) above |= p.up(i);
    if (w.subset_of(above)) return c;
  }
  return std::nullopt;
}
inline bool has_coinitial_chain(const Poset& p, Subset w) {
  return w.empty() || find_coinitial_chain(p, w).has_value();
}
inline bool has_coinitial_chain(const Poset& p) { return has_coinitial_chain(p, p.all()); }

struct FamilySearchOptions {
  std::size_t max_family_size = 2;
  std::uint64_t budget = 1'000'000;
};

struct FamilySearchResult {
  bool holds = false;
  /// family[i] for i in the searched subset, empty for the others.
  std::vector<Subset> family;
  std::uint64_t explored = 0;
};

/// Searches for sets F_i of at most `max_family_size` elements of {<=i} (within `w`)
/// such that any F_i, F_j contain comparable elements. Backtracking with forward checking.
inline FamilySearchResult coinitial_family_search(const Poset& p, Subset w, FamilySearchOptions opt = {}) {
  FamilySearchResult res;
  res.family.assign(p.size(), Subset());
  std::vector<std::size_t> vars(w.begin(), w.end());
  if (vars.empty()) {
    res.holds = true;
    return res;
  }
  auto meets = [&](Subset f, Subset g) {
    for (std::size_t u : f)
      if (p.comparable_with(u).intersects(g)) return true;
    return false;
  };
  std::vector<std::vector<Subset>> dom(p.size());
  for (std::size_t v : vars) {
    std::vector<std::size_t> below;
    for (std::size_t u : p.down(v) & w) below.push_back(u);
    std::function<void(std::size_t, Subset)> pick = [&](std::size_t k, Subset cur) {
      if (cur.size() > opt.max_family_size) return;
      if (k == below.size()) {
        if (!cur.empty()) dom[v].push_back(cur);
        return;
      }
      pick(k + 1, cur);
      pick(k + 1, cur | Subset::single(below[k]));
    };
    pick(0, Subset());
  }
  // Arc consistency before branching.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t v : vars)
      for (std::size_t u : vars) {
        if (u == v) continue;
        auto& dv = dom[v];
        auto keep = std::remove_if(dv.begin(), dv.end(), [&](Subset f) {
          return std::none_of(dom[u].begin(), dom[u].end(), [&](Subset g) { return meets(f, g); });
        });
        if (keep != dv.end()) {
          dv.erase(keep, dv.end());
          changed = true;
        }
        if (dv.empty()) return res;
      }
  }
  std::sort(vars.begin(), vars.end(), [&](std::size_t a, std::size_t b) {
    return dom[a].size() != dom[b].size() ? dom[a].size() < dom[b].size() : a < b;
  });
  std::function<bool(std::size_t, std::vector<std::vector<Subset>>&)> solve =
      [&](std::size_t k, std::vector<std::vector<Subset>>& d) -> bool {
    if (k == vars.size()) return true;
    const std::size_t v = vars[k];
    for (Subset f : d[v]) {
      if (++res.explored > opt.budget)
        throw SearchBudgetExceeded("coinitial family search exceeded " + std::to_string(opt.budget) +
                                   " candidate families");
      std::vector<std::vector<Subset>> next = d;
      bool dead = false;
      for (std::size_t t = k + 1; t < vars.size() && !dead; ++t) {
        auto& dt = next[vars[t]];
        dt.erase(std::remove_if(dt.begin(), dt.end(), [&](Subset g) { return !meets(f, g); }), dt.end());
        dead = dt.empty();
      }
      if (dead) continue;
      res.family[v] = f;
      if (solve(k + 1, next)) return true;
    }
    res.family[v] = Subset();
    return false;
  };
  res.holds = solve(0, dom);
  return res;
}

inline bool coinitial_family_condition(const Poset& p, Subset w, FamilySearchOptions opt = {}) {
  return coinitial_family_search(p, w, opt).holds;
}
inline bool coinitial_family_condition(const Poset& p, FamilySearchOptions opt = {}) {
  return coinitial_family_condition(p, p.all(), opt);
}

/// Iterated stripping of minimal elements of `w`.
inline KrullFiltration krull_filtration(const Poset& p, Subset w) {
  KrullFiltration k;
  while (!w.empty()) {
    Subset layer = minimal_elements(p, w);
    k.layers.push_back(layer);
    w -= layer;
  }
  return k;
}
inline KrullFiltration krull_filtration(const Poset& p) { return krull_filtration(p, p.all()); }

/// Maximal elements of the whole poset lying above some member of `j`.
inline Subset ceiling(const Poset& p, Subset j) {
  return maximal_elements(p) & upper_closure(p, j).elems;
}

inline bool is_finitely_sheltered(const Poset& p, Subset j) {
  require_within(p, j);
  if (j.empty()) return false;
  const Subset c = ceiling(p, j);
  return j.subset_of(lower_closure(p, c).elems) && c.subset_of(j);
}

/// {i not<=} : elements not above i.
inline Subset not_above(const Poset& p, std::size_t i) { return p.all() - p.up(i); }

/// {A not<=} : elements above no member of `a`.
inline Subset not_above(const Poset& p, Subset a) { return p.all() - upper_closure(p, a).elems; }

}  // namespace posalg
