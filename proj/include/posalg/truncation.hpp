#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "posalg/errors.hpp"
#include "posalg/morphism.hpp"
#include "posalg/poset.hpp"

namespace posalg {

using Rational = boost::multiprecision::cpp_rational;

/// The field with two elements.
struct GF2 {
  bool v = false;
  GF2() = default;
  GF2(int x) : v(x % 2 != 0) {}  // NOLINT(google-explicit-constructor)
  friend GF2 operator+(GF2 a, GF2 b) { return GF2(a.v != b.v ? 1 : 0); }
  friend GF2 operator-(GF2 a, GF2 b) { return a + b; }
  friend GF2 operator-(GF2 a) { return a; }
  friend GF2 operator*(GF2 a, GF2 b) { return GF2(a.v && b.v ? 1 : 0); }
  GF2& operator+=(GF2 b) { return *this = *this + b; }
  GF2& operator-=(GF2 b) { return *this = *this - b; }
  friend bool operator==(GF2 a, GF2 b) { return a.v == b.v; }
  friend bool operator!=(GF2 a, GF2 b) { return a.v != b.v; }
  friend bool operator==(GF2 a, int b) { return a == GF2(b); }
  friend bool operator!=(GF2 a, int b) { return a != GF2(b); }
};

template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static Rational make(std::int64_t num, std::int64_t den) { return Rational(num, den); }
  static std::string str(const Rational& q) {
    return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
  }
  template <class Rng>
  static Rational random_nonzero(Rng& rng) {
    std::uniform_int_distribution<int> num(1, 3), den(1, 3), sign(0, 1);
    return Rational(sign(rng) ? num(rng) : -num(rng), den(rng));
  }
};

template <>
struct FieldTraits<GF2> {
  static GF2 make(std::int64_t num, std::int64_t den) {
    if (den % 2 == 0) throw std::domain_error("even denominator in GF(2)");
    return GF2(static_cast<int>(num % 2));
  }
  static std::string str(GF2 v) { return v.v ? "1/1" : "0/1"; }
  template <class Rng>
  static GF2 random_nonzero(Rng&) { return GF2(1); }
};

/// Subset of a finite index set.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t universe) : in_(universe, false) {}

  std::size_t universe() const { return in_.size(); }
  bool contains(std::size_t i) const { return in_[i]; }
  void insert(std::size_t i) { in_[i] = true; }
  std::size_t count() const { return static_cast<std::size_t>(std::count(in_.begin(), in_.end(), true)); }
  bool empty() const { return std::find(in_.begin(), in_.end(), true) == in_.end(); }
  bool subset_of(const PointSet& o) const {
    for (std::size_t i = 0; i < in_.size(); ++i)
      if (in_[i] && !o.in_[i]) return false;
    return true;
  }
  bool intersects(const PointSet& o) const {
    for (std::size_t i = 0; i < in_.size(); ++i)
      if (in_[i] && o.in_[i]) return true;
    return false;
  }
  PointSet operator|(const PointSet& o) const {
    PointSet r(*this);
    for (std::size_t i = 0; i < in_.size(); ++i) r.in_[i] = in_[i] || o.in_[i];
    return r;
  }
  PointSet operator&(const PointSet& o) const {
    PointSet r(*this);
    for (std::size_t i = 0; i < in_.size(); ++i) r.in_[i] = in_[i] && o.in_[i];
    return r;
  }
  bool operator==(const PointSet&) const = default;
  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < in_.size(); ++i)
      if (in_[i]) out.push_back(i);
    return out;
  }

 private:
  std::vector<bool> in_;
};

/// Finitely supported square matrix over F, stored row by row.
template <class F = Rational>
class SparseMat {
 public:
  using Row = std::map<std::size_t, F>;

  SparseMat() = default;
  explicit SparseMat(std::size_t dim) : rows_(dim) {}

  static SparseMat identity(std::size_t dim) {
    SparseMat m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.rows_[i].emplace(i, F(1));
    return m;
  }
  static SparseMat unit(std::size_t dim, std::size_t r, std::size_t c, F v = F(1)) {
    SparseMat m(dim);
    m.set(r, c, v);
    return m;
  }
  static SparseMat indicator(const PointSet& s) {
    SparseMat m(s.universe());
    for (std::size_t i : s.members()) m.rows_[i].emplace(i, F(1));
    return m;
  }

  std::size_t dim() const { return rows_.size(); }
  const Row& row(std::size_t r) const { return rows_[r]; }

  F get(std::size_t r, std::size_t c) const {
    auto it = rows_[r].find(c);
    return it == rows_[r].end() ? F(0) : it->second;
  }
  void set(std::size_t r, std::size_t c, const F& v) {
    if (r >= dim() || c >= dim()) throw IndexMismatch("matrix index out of range");
    if (v == 0) rows_[r].erase(c);
    else rows_[r][c] = v;
  }
  void add_to(std::size_t r, std::size_t c, const F& v) {
    auto& slot = rows_[r][c];
    slot += v;
    if (slot == 0) rows_[r].erase(c);
  }

  std::size_t nnz() const {
    std::size_t k = 0;
    for (const auto& r : rows_) k += r.size();
    return k;
  }
  bool is_zero() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const Row& r) { return r.empty(); });
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (const auto& [c, v] : rows_[r]) fn(r, c, v);
  }

  PointSet nonzero_rows() const {
    PointSet s(dim());
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (!rows_[r].empty()) s.insert(r);
    return s;
  }

  friend SparseMat operator+(const SparseMat& a, const SparseMat& b) {
    require_same_dim(a, b);
    SparseMat c = a;
    b.for_each([&](std::size_t r, std::size_t col, const F& v) { c.add_to(r, col, v); });
    return c;
  }
  friend SparseMat operator-(const SparseMat& a, const SparseMat& b) {
    require_same_dim(a, b);
    SparseMat c = a;
    b.for_each([&](std::size_t r, std::size_t col, const F& v) { c.add_to(r, col, F(0) - v); });
    return c;
  }
  friend SparseMat operator*(const F& k, const SparseMat& a) {
    SparseMat c(a.dim());
    if (k == 0) return c;
    a.for_each([&](std::size_t r, std::size_t col, const F& v) { c.rows_[r].emplace(col, k * v); });
    return c;
  }
  friend SparseMat operator*(const SparseMat& a, const SparseMat& b) {
    require_same_dim(a, b);
    SparseMat c(a.dim());
    for (std::size_t r = 0; r < a.dim(); ++r)
      for (const auto& [k, v] : a.rows_[r])
        for (const auto& [col, w] : b.rows_[k]) c.add_to(r, col, v * w);
    return c;
  }
  bool operator==(const SparseMat& o) const { return rows_ == o.rows_; }

  static void require_same_dim(const SparseMat& a, const SparseMat& b) {
    if (a.dim() != b.dim())
      throw IndexMismatch("matrix dimensions differ: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  }

 private:
  std::vector<Row> rows_;
};

/// X_n(I): pairs (p, A) with p a map from the elements to {0..n-1} and A a maximal
/// chain. A map is encoded by its base-n code (element e contributes digit * n^e);
/// the point (p, A) has index A * n^|I| + code(p).
class TruncationSpace {
 public:
  /// Per-element data: {i<=}, {<=i}, their maximal chains, and index tables.
  struct Local {
    Subset up, down, notup;
    std::vector<std::size_t> up_elems, notup_elems;
    /// Full codes of maps supported on {i<=} (resp. {i not<=}), by compact index.
    std::vector<std::size_t> up_codes, notup_codes;
    std::vector<Chain> chains_down;  // maximal chains of {<=i}
    std::vector<Chain> chains_up;    // maximal chains of {i<=}
    /// For each maximal chain A through i: indices of A∩{<=i} and A∩{i<=}; -1 otherwise.
    std::vector<long> c_of, e_of;
    /// join[C][E] = index of the maximal chain C ∪ E.
    std::vector<std::vector<std::size_t>> join;
  };

  TruncationSpace(PosetPtr p, std::size_t n) : p_(std::move(p)), n_(n) {
    if (n < 2) throw NTooSmall("truncation size n must be at least 2");
    const std::size_t k = p_->size();
    pow_.assign(k + 1, 1);
    for (std::size_t e = 0; e < k; ++e) {
      if (pow_[e] > (std::size_t{1} << 40) / n_) throw SearchBudgetExceeded("truncation space too large");
      pow_[e + 1] = pow_[e] * n_;
    }
    npow_ = pow_[k];
    chains_ = maximal_chains(*p_);
    std::map<std::uint64_t, std::size_t> chain_index;
    for (std::size_t a = 0; a < chains_.size(); ++a) {
      masks_.push_back(chains_[a].mask());
      chain_index.emplace(masks_.back().bits(), a);
    }
    for (std::size_t i = 0; i < k; ++i) {
      Local l;
      l.up = p_->up(i);
      l.down = p_->down(i);
      l.notup = p_->all() - l.up;
      l.up_elems.assign(l.up.begin(), l.up.end());
      l.notup_elems.assign(l.notup.begin(), l.notup.end());
      l.up_codes = codes_over(l.up_elems);
      l.notup_codes = codes_over(l.notup_elems);
      l.chains_down = maximal_chains(*p_, l.down);
      l.chains_up = maximal_chains(*p_, l.up);
      std::map<std::uint64_t, std::size_t> di, ui;
      for (std::size_t c = 0; c < l.chains_down.size(); ++c) di.emplace(l.chains_down[c].mask().bits(), c);
      for (std::size_t e = 0; e < l.chains_up.size(); ++e) ui.emplace(l.chains_up[e].mask().bits(), e);
      l.c_of.assign(chains_.size(), -1);
      l.e_of.assign(chains_.size(), -1);
      for (std::size_t a = 0; a < chains_.size(); ++a) {
        if (!masks_[a].contains(i)) continue;
        l.c_of[a] = static_cast<long>(di.at((masks_[a] & l.down).bits()));
        l.e_of[a] = static_cast<long>(ui.at((masks_[a] & l.up).bits()));
      }
      l.join.assign(l.chains_down.size(), std::vector<std::size_t>(l.chains_up.size()));
      for (std::size_t c = 0; c < l.chains_down.size(); ++c)
        for (std::size_t e = 0; e < l.chains_up.size(); ++e)
          l.join[c][e] = chain_index.at((l.chains_down[c].mask() | l.chains_up[e].mask()).bits());
      locals_.push_back(std::move(l));
    }
  }

  const PosetPtr& poset_ptr() const { return p_; }
  const Poset& poset() const { return *p_; }
  std::size_t n() const { return n_; }
  std::size_t map_count() const { return npow_; }
  std::size_t size() const { return npow_ * chains_.size(); }
  const std::vector<Chain>& chains() const { return chains_; }
  Subset chain_mask(std::size_t a) const { return masks_[a]; }
  const Local& local(std::size_t i) const { return locals_.at(i); }

  std::size_t point(std::size_t code, std::size_t chain) const { return chain * npow_ + code; }
  std::size_t code_of(std::size_t x) const { return x % npow_; }
  std::size_t chain_of(std::size_t x) const { return x / npow_; }
  std::size_t digit(std::size_t code, std::size_t e) const { return code / pow_[e] % n_; }
  std::size_t power(std::size_t e) const { return pow_[e]; }

  /// Code of the map that agrees with `code` on `s` and is 0 elsewhere.
  std::size_t restrict(std::size_t code, Subset s) const {
    std::size_t out = 0;
    for (std::size_t e : s) out += digit(code, e) * pow_[e];
    return out;
  }
  /// Position of the restriction of `code` to `elems` in the compact enumeration.
  std::size_t compact(std::size_t code, const std::vector<std::size_t>& elems) const {
    std::size_t out = 0, w = 1;
    for (std::size_t e : elems) {
      out += digit(code, e) * w;
      w *= n_;
    }
    return out;
  }

  /// Index set n^{i<=} x M(I) for phi_i.
  std::size_t q_dim(std::size_t i) const { return local(i).up_codes.size() * chains_.size(); }
  /// Index set X(i<=) = n^{i<=} x M(i<=) for psi_i.
  std::size_t x_dim(std::size_t i) const { return local(i).up_codes.size() * local(i).chains_up.size(); }

  std::vector<std::size_t> codes_over(const std::vector<std::size_t>& elems) const {
    std::vector<std::size_t> out{0};
    for (std::size_t e : elems) {
      std::vector<std::size_t> next;
      next.reserve(out.size() * n_);
      for (std::size_t d = 0; d < n_; ++d)
        for (std::size_t c : out) next.push_back(c + d * pow_[e]);
      out = std::move(next);
    }
    return out;
  }

 private:
  PosetPtr p_;
  std::size_t n_;
  std::vector<std::size_t> pow_;
  std::size_t npow_ = 1;
  std::vector<Chain> chains_;
  std::vector<Subset> masks_;
  std::vector<Local> locals_;
};

// ---------------------------------------------------------------------------
// Distinguished subsets.

/// Block X_(u,A) = E_u x {A} of the partition P_i; `cu` is the compact index of u.
inline PointSet block_P(const TruncationSpace& s, std::size_t i, std::size_t cu, std::size_t a) {
  const auto& l = s.local(i);
  PointSet out(s.size());
  for (std::size_t r : l.notup_codes) out.insert(s.point(l.up_codes.at(cu) + r, a));
  return out;
}

/// P_i, ordered by chain then by u.
inline std::vector<PointSet> partition_P(const TruncationSpace& s, std::size_t i) {
  std::vector<PointSet> out;
  for (std::size_t a = 0; a < s.chains().size(); ++a)
    for (std::size_t cu = 0; cu < s.local(i).up_codes.size(); ++cu) out.push_back(block_P(s, i, cu, a));
  return out;
}

/// E_u as a set of map codes.
inline PointSet block_E(const TruncationSpace& s, std::size_t i, std::size_t cu) {
  const auto& l = s.local(i);
  PointSet out(s.map_count());
  for (std::size_t r : l.notup_codes) out.insert(l.up_codes.at(cu) + r);
  return out;
}

inline std::vector<PointSet> partition_E(const TruncationSpace& s, std::size_t i) {
  std::vector<PointSet> out;
  for (std::size_t cu = 0; cu < s.local(i).up_codes.size(); ++cu) out.push_back(block_E(s, i, cu));
  return out;
}

/// X(I)_i: points whose chain passes through i.
inline PointSet X_i(const TruncationSpace& s, std::size_t i) {
  PointSet out(s.size());
  for (std::size_t x = 0; x < s.size(); ++x)
    if (s.chain_mask(s.chain_of(x)).contains(i)) out.insert(x);
  return out;
}

/// X(I,J): union of X(I)_j over j in J.
inline PointSet X_J(const TruncationSpace& s, Subset j) {
  PointSet out(s.size());
  for (std::size_t x = 0; x < s.size(); ++x)
    if (s.chain_mask(s.chain_of(x)).intersects(j)) out.insert(x);
  return out;
}

/// N_C for C the c-th maximal chain of {<=i}.
inline PointSet N_C(const TruncationSpace& s, std::size_t i, std::size_t c) {
  const auto& l = s.local(i);
  PointSet out(s.size());
  for (std::size_t x = 0; x < s.size(); ++x)
    if (l.c_of[s.chain_of(x)] == static_cast<long>(c)) out.insert(x);
  return out;
}

/// f_{C'C}: N_C -> N_{C'}, (p, C u E) -> (p, C' u E).
inline std::size_t f_map(const TruncationSpace& s, std::size_t i, std::size_t c_to, std::size_t c_from,
                         std::size_t x) {
  const auto& l = s.local(i);
  const std::size_t a = s.chain_of(x);
  if (l.c_of[a] != static_cast<long>(c_from)) throw IndexMismatch("point is not in N_C");
  return s.point(s.code_of(x), l.join[c_to][static_cast<std::size_t>(l.e_of[a])]);
}

/// Y_(u,E) = {(p, A) : p|{i<=} = u, A ∩ {i<=} = E}.
inline PointSet Y_set(const TruncationSpace& s, std::size_t i, std::size_t cu, std::size_t e) {
  const auto& l = s.local(i);
  PointSet out(s.size());
  for (std::size_t c = 0; c < l.chains_down.size(); ++c)
    for (std::size_t r : l.notup_codes) out.insert(s.point(l.up_codes.at(cu) + r, l.join[c][e]));
  return out;
}

/// R_i, ordered by E then u (the order of X(i<=) indices).
inline std::vector<PointSet> partition_R(const TruncationSpace& s, std::size_t i) {
  std::vector<PointSet> out;
  for (std::size_t e = 0; e < s.local(i).chains_up.size(); ++e)
    for (std::size_t cu = 0; cu < s.local(i).up_codes.size(); ++cu) out.push_back(Y_set(s, i, cu, e));
  return out;
}

template <class F = Rational>
SparseMat<F> zeta(const PointSet& y) {
  return SparseMat<F>::indicator(y);
}

// ---------------------------------------------------------------------------
// Embeddings.

inline void require_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want)
    throw IndexMismatch(std::string(what) + ": expected dimension " + std::to_string(want) + ", got " +
                        std::to_string(got));
}

/// phi_i(z)((r u u, A), (s u v, B)) = delta(r, s) z((u, A), (v, B)).
template <class F>
SparseMat<F> phi_embed(const TruncationSpace& s, std::size_t i, const SparseMat<F>& small) {
  require_dim(small.dim(), s.q_dim(i), "phi_embed");
  const auto& l = s.local(i);
  const std::size_t uc = l.up_codes.size();
  SparseMat<F> big(s.size());
  small.for_each([&](std::size_t x, std::size_t y, const F& v) {
    const std::size_t a = x / uc, u = l.up_codes[x % uc];
    const std::size_t b = y / uc, w = l.up_codes[y % uc];
    for (std::size_t r : l.notup_codes) big.set(s.point(u + r, a), s.point(w + r, b), v);
  });
  return big;
}

/// Left inverse of phi_i: reads the block at r = 0.
template <class F>
SparseMat<F> phi_extract(const TruncationSpace& s, std::size_t i, const SparseMat<F>& big) {
  require_dim(big.dim(), s.size(), "phi_extract");
  const auto& l = s.local(i);
  const std::size_t uc = l.up_codes.size();
  SparseMat<F> small(s.q_dim(i));
  big.for_each([&](std::size_t x, std::size_t y, const F& v) {
    const std::size_t cx = s.code_of(x), cy = s.code_of(y);
    if (s.restrict(cx, l.notup) != 0 || s.restrict(cy, l.notup) != 0) return;
    small.set(s.chain_of(x) * uc + s.compact(cx, l.up_elems), s.chain_of(y) * uc + s.compact(cy, l.up_elems), v);
  });
  return small;
}

/// psi_i(z)((r u u, C u E), (s u v, C u F)) = delta(r, s) z((u, E), (v, F)); zero off the N_C blocks.
template <class F>
SparseMat<F> psi_embed(const TruncationSpace& s, std::size_t i, const SparseMat<F>& small) {
  require_dim(small.dim(), s.x_dim(i), "psi_embed");
  const auto& l = s.local(i);
  const std::size_t uc = l.up_codes.size();
  SparseMat<F> big(s.size());
  small.for_each([&](std::size_t x, std::size_t y, const F& v) {
    const std::size_t e = x / uc, u = l.up_codes[x % uc];
    const std::size_t f = y / uc, w = l.up_codes[y % uc];
    for (std::size_t c = 0; c < l.chains_down.size(); ++c)
      for (std::size_t r : l.notup_codes) big.set(s.point(u + r, l.join[c][e]), s.point(w + r, l.join[c][f]), v);
  });
  return big;
}

/// Left inverse of psi_i: reads the block at r = 0 and the first chain of {<=i}.
template <class F>
SparseMat<F> psi_extract(const TruncationSpace& s, std::size_t i, const SparseMat<F>& big) {
  require_dim(big.dim(), s.size(), "psi_extract");
  const auto& l = s.local(i);
  const std::size_t uc = l.up_codes.size();
  SparseMat<F> small(s.x_dim(i));
  big.for_each([&](std::size_t x, std::size_t y, const F& v) {
    const std::size_t cx = s.code_of(x), cy = s.code_of(y);
    const std::size_t a = s.chain_of(x), b = s.chain_of(y);
    if (l.c_of[a] != 0 || l.c_of[b] != 0) return;
    if (s.restrict(cx, l.notup) != 0 || s.restrict(cy, l.notup) != 0) return;
    small.set(static_cast<std::size_t>(l.e_of[a]) * uc + s.compact(cx, l.up_elems),
              static_cast<std::size_t>(l.e_of[b]) * uc + s.compact(cy, l.up_elems), v);
  });
  return small;
}

// ---------------------------------------------------------------------------
// Membership.

/// Q(I,i): every block over (E_u x {A}, E_v x {B}) is a scalar multiple of the
/// identity on the {i not<=} coordinates.
template <class F>
bool in_Q(const TruncationSpace& s, std::size_t i, const SparseMat<F>& m) {
  require_dim(m.dim(), s.size(), "in_Q");
  const auto& l = s.local(i);
  bool ok = true;
  m.for_each([&](std::size_t x, std::size_t y, const F& v) {
    if (!ok) return;
    const std::size_t cx = s.code_of(x), cy = s.code_of(y);
    if (s.restrict(cx, l.notup) != s.restrict(cy, l.notup)) {
      ok = false;
      return;
    }
    const std::size_t ux = s.restrict(cx, l.up), uy = s.restrict(cy, l.up);
    const std::size_t a = s.chain_of(x), b = s.chain_of(y);
    for (std::size_t r : l.notup_codes)
      if (m.get(s.point(ux + r, a), s.point(uy + r, b)) != v) {
        ok = false;
        return;
      }
  });
  return ok;
}

/// Condition (*_i) entrywise: nonzero entries only between points whose chains
/// pass through i and agree below i.
template <class F>
bool satisfies_star(const TruncationSpace& s, std::size_t i, const SparseMat<F>& m) {
  const auto& l = s.local(i);
  bool ok = true;
  m.for_each([&](std::size_t x, std::size_t y, const F&) {
    const long cx = l.c_of[s.chain_of(x)], cy = l.c_of[s.chain_of(y)];
    if (cx < 0 || cy < 0 || cx != cy) ok = false;
  });
  return ok;
}

/// Condition (**_i) entrywise: blocks over N_C and N_D agree through f_{DC}.
template <class F>
bool satisfies_starstar(const TruncationSpace& s, std::size_t i, const SparseMat<F>& m) {
  const auto& l = s.local(i);
  bool ok = true;
  m.for_each([&](std::size_t x, std::size_t y, const F& v) {
    if (!ok) return;
    const long cx = l.c_of[s.chain_of(x)], cy = l.c_of[s.chain_of(y)];
    if (cx < 0 || cx != cy) return;
    for (std::size_t d = 0; d < l.chains_down.size(); ++d) {
      const auto c = static_cast<std::size_t>(cx);
      if (m.get(f_map(s, i, d, c, x), f_map(s, i, d, c, y)) != v) {
        ok = false;
        return;
      }
    }
  });
  return ok;
}

template <class F>
bool in_S(const TruncationSpace& s, std::size_t i, const SparseMat<F>& m) {
  return in_Q(s, i, m) && satisfies_star(s, i, m) && satisfies_starstar(s, i, m);
}

/// Partial permutation matrix of f_{C'C}, with entry 1 at (f(x), x).
template <class F>
SparseMat<F> f_matrix(const TruncationSpace& s, std::size_t i, std::size_t c_to, std::size_t c_from) {
  SparseMat<F> m(s.size());
  for (std::size_t x : N_C(s, i, c_from).members()) m.set(f_map(s, i, c_to, c_from, x), x, F(1));
  return m;
}

template <class F>
SparseMat<F> transpose(const SparseMat<F>& m) {
  SparseMat<F> t(m.dim());
  m.for_each([&](std::size_t r, std::size_t c, const F& v) { t.set(c, r, v); });
  return t;
}

/// (*_i) and (**_i) in their matrix form: z = zeta_{X_i} z = z zeta_{X_i},
/// zeta_{N_C} z = zeta_{N_C} z zeta_{N_C} = z zeta_{N_C}, and
/// zeta_{N_C} z zeta_{N_C} = P^T z P for P the matrix of f_{C'C}.
template <class F>
bool in_S_matrix_form(const TruncationSpace& s, std::size_t i, const SparseMat<F>& m) {
  if (!in_Q(s, i, m)) return false;
  const auto xi = zeta<F>(X_i(s, i));
  if (!(xi * m == m) || !(m * xi == m)) return false;
  const std::size_t nc = s.local(i).chains_down.size();
  for (std::size_t c = 0; c < nc; ++c) {
    const auto z = zeta<F>(N_C(s, i, c));
    const auto zm = z * m, zmz = zm * z, mz = m * z;
    if (!(zm == zmz) || !(mz == zmz)) return false;
    for (std::size_t c2 = 0; c2 < nc; ++c2) {
      const auto pm = f_matrix<F>(s, i, c2, c);
      if (!(transpose(pm) * m * pm == zmz)) return false;
    }
  }
  return true;
}

/// The truncated H(I,i): S(I,i) for non-maximal i, multiples of zeta_{X_i} for maximal i.
template <class F>
bool in_H(const TruncationSpace& s, std::size_t i, const SparseMat<F>& m) {
  if (!maximal_elements(s.poset()).contains(i)) return in_S(s, i, m);
  const auto xi = X_i(s, i);
  if (m.is_zero()) return true;
  const auto first = xi.members().front();
  const F k = m.get(first, first);
  return m == k * zeta<F>(xi);
}

// ---------------------------------------------------------------------------
// Sampling.

template <class F, class Rng>
SparseMat<F> random_sparse(std::size_t dim, Rng& rng, std::size_t max_entries = 8) {
  SparseMat<F> m(dim);
  std::uniform_int_distribution<std::size_t> count(1, max_entries), pos(0, dim - 1);
  const std::size_t k = count(rng);
  for (std::size_t t = 0; t < k; ++t) m.set(pos(rng), pos(rng), FieldTraits<F>::random_nonzero(rng));
  return m;
}

/// Random element of the truncated H(I,i).
template <class F, class Rng>
SparseMat<F> random_H(const TruncationSpace& s, std::size_t i, Rng& rng) {
  if (maximal_elements(s.poset()).contains(i)) return FieldTraits<F>::random_nonzero(rng) * zeta<F>(X_i(s, i));
  return psi_embed(s, i, random_sparse<F>(s.x_dim(i), rng));
}

/// psi_i images of all matrix units of X(i<=) (just zeta_{X_i} for maximal i).
template <class F>
std::vector<SparseMat<F>> H_generators(const TruncationSpace& s, std::size_t i) {
  std::vector<SparseMat<F>> out;
  if (maximal_elements(s.poset()).contains(i)) {
    out.push_back(zeta<F>(X_i(s, i)));
    return out;
  }
  const std::size_t d = s.x_dim(i);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y) out.push_back(psi_embed(s, i, SparseMat<F>::unit(d, x, y)));
  return out;
}

// ---------------------------------------------------------------------------
// Transport along a Pos-morphism.

namespace detail {

/// Relabels a matrix over X_I(i<=) into one over X_J(f(i)<=) via f.
template <class F>
SparseMat<F> relabel_up(const TruncationSpace& si, const TruncationSpace& sj, const PosetMorphism& f, std::size_t i,
                        const SparseMat<F>& small, bool inverse) {
  const std::size_t j = f(i);
  const auto& li = si.local(i);
  const auto& lj = sj.local(j);
  const std::size_t uci = li.up_codes.size(), ucj = lj.up_codes.size();
  if (uci != ucj || li.chains_up.size() != lj.chains_up.size())
    throw NotPosMorphism("f does not map {i<=} isomorphically onto {f(i)<=}");
  // Map compact indices over {i<=} to compact indices over {f(i)<=}.
  std::vector<std::size_t> pos_in_j(li.up_elems.size());
  for (std::size_t t = 0; t < li.up_elems.size(); ++t) {
    auto it = std::find(lj.up_elems.begin(), lj.up_elems.end(), f(li.up_elems[t]));
    if (it == lj.up_elems.end()) throw NotPosMorphism("f does not map {i<=} onto {f(i)<=}");
    pos_in_j[t] = static_cast<std::size_t>(it - lj.up_elems.begin());
  }
  std::vector<std::size_t> u_map(uci), e_map(li.chains_up.size());
  for (std::size_t cu = 0; cu < uci; ++cu) {
    std::size_t rest = cu, out = 0;
    for (std::size_t t = 0; t < li.up_elems.size(); ++t) {
      std::size_t w = 1;
      for (std::size_t q = 0; q < pos_in_j[t]; ++q) w *= sj.n();
      out += (rest % si.n()) * w;
      rest /= si.n();
    }
    u_map[cu] = out;
  }
  for (std::size_t e = 0; e < li.chains_up.size(); ++e) {
    const Subset img = f.image(li.chains_up[e].mask());
    bool found = false;
    for (std::size_t e2 = 0; e2 < lj.chains_up.size() && !found; ++e2)
      if (lj.chains_up[e2].mask() == img) {
        e_map[e] = e2;
        found = true;
      }
    if (!found) throw NotPosMorphism("f does not map maximal chains of {i<=} onto those of {f(i)<=}");
  }
  auto fwd = [&](std::size_t x) { return e_map[x / uci] * ucj + u_map[x % uci]; };
  SparseMat<F> out(inverse ? si.x_dim(i) : sj.x_dim(j));
  if (!inverse) {
    small.for_each([&](std::size_t x, std::size_t y, const F& v) { out.set(fwd(x), fwd(y), v); });
  } else {
    std::vector<std::size_t> back(sj.x_dim(j));
    for (std::size_t x = 0; x < si.x_dim(i); ++x) back[fwd(x)] = x;
    small.for_each([&](std::size_t x, std::size_t y, const F& v) { out.set(back[x], back[y], v); });
  }
  return out;
}

inline void require_spaces(const TruncationSpace& si, const TruncationSpace& sj, const PosetMorphism& f) {
  require_pos_morphism(f);
  if (!si.poset().same_order(*f.source) || !sj.poset().same_order(*f.target))
    throw IndexMismatch("truncation spaces do not match the morphism");
  if (si.n() != sj.n()) throw IndexMismatch("truncation spaces use different n");
}

}  // namespace detail

/// f-hat_i: H_trunc(I,i) -> H_trunc(J,f(i)), transporting psi-coordinates along f.
template <class F>
SparseMat<F> f_hat(const TruncationSpace& si, const TruncationSpace& sj, const PosetMorphism& f, std::size_t i,
                   const SparseMat<F>& m) {
  detail::require_spaces(si, sj, f);
  if (!in_H(si, i, m)) throw NotInSubalgebra("matrix is not in the truncated H(I,i)");
  return psi_embed(sj, f(i), detail::relabel_up(si, sj, f, i, psi_extract(si, i, m), false));
}

/// Inverse of f-hat_i on H_trunc(J,f(i)).
template <class F>
SparseMat<F> f_hat_inverse(const TruncationSpace& si, const TruncationSpace& sj, const PosetMorphism& f,
                           std::size_t i, const SparseMat<F>& m) {
  detail::require_spaces(si, sj, f);
  if (!in_H(sj, f(i), m)) throw NotInSubalgebra("matrix is not in the truncated H(J,f(i))");
  return psi_embed(si, i, detail::relabel_up(si, sj, f, i, psi_extract(sj, f(i), m), true));
}

}  // namespace posalg
