#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "posalg/algebra.hpp"
#include "posalg/errors.hpp"
#include "posalg/hahn.hpp"
#include "posalg/morphism.hpp"
#include "posalg/poset.hpp"
#include "posalg/truncation.hpp"

namespace posalg {

/// Checked evaluation rejects maps outside the functor's domain; forced evaluation
/// computes the raw linear extension anyway.
enum class EvalMode { Checked, Forced };

/// Group homomorphism G(source) -> G(target) given by the images of basis elements.
struct GroupHom {
  PosetPtr source;
  PosetPtr target;
  /// columns[i] = image of the basis element i, as sorted (target index, coefficient) pairs.
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> columns;

  static GroupHom identity(PosetPtr p) {
    GroupHom h{p, p, {}};
    for (std::size_t i = 0; i < p->size(); ++i) h.columns.push_back({{i, 1}});
    return h;
  }

  template <class Int>
  HahnElement<Int> operator()(const HahnElement<Int>& x) const {
    if (!x.poset().same_order(*source)) throw PosetMismatch("element is not in the domain of the homomorphism");
    HahnElement<Int> y(target);
    for (std::size_t i = 0; i < columns.size(); ++i)
      for (const auto& [j, c] : columns[i]) y.set(j, y[j] + x[i] * Int(c));
    return y;
  }

  std::vector<std::int64_t> apply(const std::vector<std::int64_t>& x) const {
    std::vector<std::int64_t> y(target->size(), 0);
    for (std::size_t i = 0; i < columns.size(); ++i)
      for (const auto& [j, c] : columns[i]) y[j] += x[i] * c;
    return y;
  }

  bool operator==(const GroupHom& o) const {
    return columns == o.columns && source->same_order(*o.source) && target->same_order(*o.target);
  }
};

namespace detail {

inline void normalize(std::vector<std::pair<std::size_t, std::int64_t>>& col) {
  std::map<std::size_t, std::int64_t> acc;
  for (const auto& [j, c] : col) acc[j] += c;
  col.clear();
  for (const auto& [j, c] : acc)
    if (c != 0) col.emplace_back(j, c);
}

}  // namespace detail

/// g after f.
inline GroupHom compose(const GroupHom& g, const GroupHom& f) {
  if (!f.target->same_order(*g.source)) throw PosetMismatch("homomorphisms are not composable");
  GroupHom h{f.source, g.target, {}};
  for (const auto& col : f.columns) {
    std::vector<std::pair<std::size_t, std::int64_t>> out;
    for (const auto& [j, c] : col)
      for (const auto& [k, d] : g.columns[j]) out.emplace_back(k, c * d);
    detail::normalize(out);
    h.columns.push_back(std::move(out));
  }
  return h;
}

/// G(f): sum x_i i |-> sum x_i f(i).
inline GroupHom G_of(const PosetMorphism& f, EvalMode mode = EvalMode::Checked) {
  if (mode == EvalMode::Checked) {
    if (!is_injective(f)) throw NotInjective("G(f) requires an injective map");
    if (!is_isotone(f)) throw NotPosMorphism("G(f) requires an isotone map");
  }
  GroupHom h{f.source, f.target, {}};
  for (std::size_t i = 0; i < f.map.size(); ++i) h.columns.push_back({{f(i), 1}});
  return h;
}

/// f*: G(target) -> G(source), (f* x)_i = x_{f(i)}.
inline GroupHom G_star_of(const PosetMorphism& f, EvalMode mode = EvalMode::Checked) {
  if (mode == EvalMode::Checked && !is_injective(f)) throw NotInjective("f* requires an injective map");
  GroupHom h{f.target, f.source, std::vector<std::vector<std::pair<std::size_t, std::int64_t>>>(f.target->size())};
  for (std::size_t i = 0; i < f.map.size(); ++i) h.columns[f(i)].emplace_back(i, 1);
  return h;
}

/// A positive x (coefficients in [-bound, bound]) with h(x) not positive, or none.
/// The first coordinate varies slowest and values ascend, so the result is canonical.
struct ConeCounterexample {
  HahnElement<BigInt> x;
  HahnElement<BigInt> image;
};

inline std::optional<ConeCounterexample> cone_counterexample(const GroupHom& h, int bound, std::uint64_t* scanned = nullptr) {
  const std::size_t k = h.source->size();
  std::vector<std::int64_t> x(k, -bound);
  std::uint64_t count = 0;
  while (true) {
    ++count;
    if (in_cone(*h.source, x.data())) {
      const auto y = h.apply(x);
      if (!in_cone(*h.target, y.data())) {
        if (scanned) *scanned = count;
        auto big = [](const PosetPtr& p, const std::vector<std::int64_t>& v) {
          std::vector<BigInt> c(v.begin(), v.end());
          return HahnElement<BigInt>(p, std::move(c));
        };
        return ConeCounterexample{big(h.source, x), big(h.target, y)};
      }
    }
    std::size_t t = k;
    while (t > 0 && x[t - 1] == bound) x[--t] = -bound;
    if (t == 0) break;
    ++x[t - 1];
  }
  if (scanned) *scanned = count;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Associated graphs.

/// Vertices are the elements; one edge i -> j for each pair i < j.
struct PosetGraph {
  PosetPtr poset;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (source, range)
  std::size_t vertex_count() const { return poset->size(); }
  std::optional<std::size_t> edge_index(std::size_t s, std::size_t r) const {
    auto it = std::find(edges.begin(), edges.end(), std::make_pair(s, r));
    if (it == edges.end()) return std::nullopt;
    return static_cast<std::size_t>(it - edges.begin());
  }
};

inline PosetGraph associated_graph(PosetPtr p) {
  PosetGraph g{p, {}};
  for (std::size_t i = 0; i < p->size(); ++i)
    for (std::size_t j = 0; j < p->size(); ++j)
      if (p->lt(i, j)) g.edges.emplace_back(i, j);
  return g;
}

struct GraphMorphism {
  PosetGraph source;
  PosetGraph target;
  std::vector<std::size_t> vertex_map;
  std::vector<std::size_t> edge_map;
};

/// Graph morphism induced by a strictly isotone map.
inline GraphMorphism associated_morphism(const PosetMorphism& f) {
  GraphMorphism g{associated_graph(f.source), associated_graph(f.target), f.map, {}};
  for (const auto& [s, r] : g.source.edges) {
    auto e = g.target.edge_index(f(s), f(r));
    if (!e) throw NotGraphMorphism("edge " + f.source->label(s) + "<" + f.source->label(r) + " has no image edge");
    g.edge_map.push_back(*e);
  }
  return g;
}

inline void require_graph_morphism(const GraphMorphism& g) {
  if (g.vertex_map.size() != g.source.vertex_count() || g.edge_map.size() != g.source.edges.size())
    throw NotGraphMorphism("maps are not total");
  for (std::size_t v : g.vertex_map)
    if (v >= g.target.vertex_count()) throw NotGraphMorphism("vertex image out of range");
  for (std::size_t e = 0; e < g.edge_map.size(); ++e) {
    if (g.edge_map[e] >= g.target.edges.size()) throw NotGraphMorphism("edge image out of range");
    const auto& [s, r] = g.source.edges[e];
    const auto& [s2, r2] = g.target.edges[g.edge_map[e]];
    if (g.vertex_map[s] != s2 || g.vertex_map[r] != r2)
      throw NotGraphMorphism("edge map does not commute with source and range");
  }
}

/// Strict CK-morphism: injective on vertices and edges, and a bijection from the
/// out-edges of every vertex v onto the out-edges of its image.
inline bool ck_check(const GraphMorphism& g) {
  require_graph_morphism(g);
  auto injective = [](const std::vector<std::size_t>& m) {
    std::vector<std::size_t> s = m;
    std::sort(s.begin(), s.end());
    return std::adjacent_find(s.begin(), s.end()) == s.end();
  };
  if (!injective(g.vertex_map) || !injective(g.edge_map)) return false;
  for (std::size_t v = 0; v < g.source.vertex_count(); ++v) {
    std::size_t out_src = 0, out_tgt = 0;
    for (std::size_t e = 0; e < g.source.edges.size(); ++e)
      if (g.source.edges[e].first == v) ++out_src;
    for (const auto& [s, r] : g.target.edges)
      if (s == g.vertex_map[v]) ++out_tgt;
    // Injective edge map sends the fiber over v into the fiber over f(v); bijective iff sizes agree.
    if (out_src != out_tgt) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Symbolic algebra maps B(f) and B*(f).

/// Action on ideals (lower sets) and on the K0 basis of a map between the algebras B(I).
struct AlgebraMap {
  PosetPtr source;
  PosetPtr target;
  bool covariant = true;
  /// Image of each source lower set's generator: basis[i] = list of target basis indices.
  std::vector<std::vector<std::size_t>> basis;
  bool unital = false;

  LowerSet on_ideal(const LowerSet& l) const {
    if (!is_lower_set(*source, l.elems)) throw NotLowerSet("argument is not a lower set of the source");
    Subset img;
    for (std::size_t i : l.elems)
      for (std::size_t j : basis[i]) img.insert(j);
    return lower_closure(*target, img);
  }

  /// K0 action on basis classes.
  template <class Int>
  typename K0Model<Int>::Combination on_k0(const K0Model<Int>& src, const K0Model<Int>& tgt,
                                           const typename K0Model<Int>::Combination& c) const {
    HahnElement<Int> y(target);
    for (const auto& [tag, v] : c)
      for (std::size_t j : basis[src.rho_inverse(tag)]) y.set(j, y[j] + v);
    return tgt.from_group(y);
  }

  bool operator==(const AlgebraMap& o) const {
    return basis == o.basis && covariant == o.covariant && source->same_order(*o.source) &&
           target->same_order(*o.target);
  }
};

inline AlgebraMap B_of(const PosetMorphism& f) {
  require_pos_morphism(f);
  AlgebraMap m{f.source, f.target, true, {}, false};
  for (std::size_t i = 0; i < f.map.size(); ++i) m.basis.push_back({f(i)});
  m.unital = f.image(maximal_elements(*f.source)) == maximal_elements(*f.target);
  return m;
}

inline AlgebraMap B_star_of(const PosetMorphism& f) {
  require_pos_morphism(f);
  AlgebraMap m{f.target, f.source, false, std::vector<std::vector<std::size_t>>(f.target->size()), false};
  for (std::size_t i = 0; i < f.map.size(); ++i) m.basis[f(i)].push_back(i);
  m.unital = f.preimage(maximal_elements(*f.target)) == maximal_elements(*f.source);
  return m;
}

inline AlgebraMap compose(const AlgebraMap& g, const AlgebraMap& f) {
  if (!f.target->same_order(*g.source)) throw PosetMismatch("algebra maps are not composable");
  AlgebraMap h{f.source, g.target, f.covariant, {}, f.unital && g.unital};
  for (const auto& col : f.basis) {
    std::vector<std::size_t> out;
    for (std::size_t j : col)
      for (std::size_t k : g.basis[j]) out.push_back(k);
    std::sort(out.begin(), out.end());
    h.basis.push_back(std::move(out));
  }
  return h;
}

inline AlgebraMap identity_algebra_map(PosetPtr p, bool covariant = true) {
  AlgebraMap m{p, p, covariant, {}, true};
  for (std::size_t i = 0; i < p->size(); ++i) m.basis.push_back({i});
  return m;
}

// ---------------------------------------------------------------------------
// Naturality of rho.

struct NaturalityReport {
  bool covariant = false;
  bool contravariant = false;
  /// Truncation cross-check: f-hat sends every zeta_Y (Y in R_i) to some zeta_{Y'}
  /// (Y' in R_{f(i)}) and zeta_{X(I)_i} to zeta_{X(J)_{f(i)}}. Unset when skipped.
  std::optional<bool> truncation;
  std::uint64_t basis_checked = 0;
  std::string detail;
  bool passed() const { return covariant && contravariant && truncation.value_or(true); }
};

/// rho(J) G(f) = K0(B(f)) rho(I) and rho(I) f* = K0(B*(f)) rho(J) on basis elements;
/// with `truncation_n` >= 2, also the idempotent cross-check through f-hat.
inline NaturalityReport naturality_check(const PosetMorphism& f, std::size_t truncation_n = 0) {
  require_pos_morphism(f);
  NaturalityReport r;
  if (f.source->empty()) {
    r.covariant = r.contravariant = true;
    r.detail = "empty source";
    return r;
  }
  const K0Model<BigInt> ki(f.source), kj(f.target);
  const auto g = G_of(f), gs = G_star_of(f);
  const auto b = B_of(f), bs = B_star_of(f);
  r.covariant = true;
  for (std::size_t i = 0; i < f.source->size(); ++i) {
    ++r.basis_checked;
    const auto lhs = kj.from_group(g(HahnElement<BigInt>::basis(f.source, i)));
    const auto rhs = b.on_k0(ki, kj, {{ki.rho(i), BigInt(1)}});
    if (lhs != rhs) {
      r.covariant = false;
      r.detail = "covariant square fails at " + f.source->label(i);
    }
  }
  r.contravariant = true;
  for (std::size_t j = 0; j < f.target->size(); ++j) {
    ++r.basis_checked;
    const auto lhs = ki.from_group(gs(HahnElement<BigInt>::basis(f.target, j)));
    const auto rhs = bs.on_k0(kj, ki, {{kj.rho(j), BigInt(1)}});
    if (lhs != rhs) {
      r.contravariant = false;
      r.detail = "contravariant square fails at " + f.target->label(j);
    }
  }
  if (truncation_n >= 2) {
    const TruncationSpace si(f.source, truncation_n), sj(f.target, truncation_n);
    bool ok = true;
    for (std::size_t i = 0; i < f.source->size() && ok; ++i) {
      const std::size_t j = f(i);
      const auto xi = zeta<Rational>(X_i(si, i));
      ok = f_hat(si, sj, f, i, xi) == zeta<Rational>(X_i(sj, j));
      if (maximal_elements(*f.source).contains(i)) continue;
      const auto targets = partition_R(sj, j);
      for (const auto& y : partition_R(si, i)) {
        const auto img = f_hat(si, sj, f, i, zeta<Rational>(y));
        const bool hit = std::any_of(targets.begin(), targets.end(),
                                     [&](const PointSet& t) { return img == zeta<Rational>(t); });
        if (!hit) {
          ok = false;
          break;
        }
      }
    }
    r.truncation = ok;
    if (!ok) r.detail = "f-hat does not send primitive idempotents to primitive idempotents";
  }
  return r;
}

/// f-hat(a b) = f-hat(a) f-hat(b) for random a in H(I,i), b in H(I,j), i <= j.
inline bool f_hat_multiplicative(const PosetMorphism& f, std::size_t n, std::size_t pairs, std::uint64_t seed,
                                 std::string* why = nullptr) {
  require_pos_morphism(f);
  const TruncationSpace si(f.source, n), sj(f.target, n);
  std::vector<std::pair<std::size_t, std::size_t>> comparable;
  for (std::size_t i = 0; i < f.source->size(); ++i)
    for (std::size_t j = 0; j < f.source->size(); ++j)
      if (f.source->le(i, j)) comparable.emplace_back(i, j);
  if (comparable.empty()) return true;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, comparable.size() - 1);
  for (std::size_t t = 0; t < pairs; ++t) {
    const auto [i, j] = comparable[pick(rng)];
    const auto a = random_H<Rational>(si, i, rng), b = random_H<Rational>(si, j, rng);
    const auto lhs = f_hat(si, sj, f, i, a * b);
    const auto rhs = f_hat(si, sj, f, i, a) * f_hat(si, sj, f, j, b);
    const auto back = f_hat_inverse(si, sj, f, i, lhs);
    if (!(lhs == rhs) || !(back == a * b)) {
      if (why) *why = "pair " + f.source->label(i) + " <= " + f.source->label(j) + " at sample " + std::to_string(t);
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Enumeration of maps.

/// All injective isotone maps between two posets, in lexicographic order of the image tuple.
inline std::vector<PosetMorphism> injective_isotone_maps(const PosetPtr& src, const PosetPtr& tgt) {
  std::vector<PosetMorphism> out;
  const std::size_t k = src->size(), m = tgt->size();
  if (k > m) return out;
  std::vector<std::size_t> cur;
  std::vector<bool> used(m, false);
  std::function<void()> rec = [&]() {
    const std::size_t i = cur.size();
    if (i == k) {
      out.push_back(PosetMorphism{src, tgt, cur});
      return;
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (used[j]) continue;
      bool ok = true;
      for (std::size_t h = 0; h < i && ok; ++h) {
        if (src->le(h, i) && !tgt->le(cur[h], j)) ok = false;
        if (src->le(i, h) && !tgt->le(j, cur[h])) ok = false;
      }
      if (!ok) continue;
      used[j] = true;
      cur.push_back(j);
      rec();
      cur.pop_back();
      used[j] = false;
    }
  };
  rec();
  return out;
}

}  // namespace posalg
