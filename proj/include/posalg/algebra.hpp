#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "posalg/errors.hpp"
#include "posalg/hahn.hpp"
#include "posalg/poset.hpp"

namespace posalg {

/// The algebra H(I,J) of a base poset I and carrier J; carrier = I is B(I).
struct AlgebraHandle {
  PosetPtr base;
  Subset carrier;

  static AlgebraHandle whole(PosetPtr base) {
    const Subset all = base->all();
    return {std::move(base), all};
  }
  static AlgebraHandle make(PosetPtr base, Subset carrier) {
    require_within(*base, carrier);
    return {std::move(base), carrier};
  }
  bool operator==(const AlgebraHandle& o) const {
    return carrier == o.carrier && (base == o.base || base->same_order(*o.base));
  }
};

/// The ideal H(I,L) of an algebra, L a lower subset of its carrier.
struct IdealModel {
  AlgebraHandle algebra;
  Subset lower_set;
  bool operator==(const IdealModel&) const = default;
};

inline IdealModel make_ideal(const AlgebraHandle& alg, Subset l) {
  require_within(*alg.base, l);
  if (!is_lower_set(*alg.base, l, alg.carrier))
    throw NotAnIdeal("{" + join(alg.base->labels_of(l)) + "} is not a lower subset of the carrier");
  return {alg, l};
}

inline bool size_then_bits(Subset a, Subset b) { return a.size() != b.size() ? a.size() < b.size() : a < b; }

struct IdealLattice {
  AlgebraHandle algebra;
  /// Lower subsets of the carrier, smallest first.
  std::vector<Subset> ideals;

  std::size_t size() const { return ideals.size(); }
  static Subset meet(Subset a, Subset b) { return a & b; }
  static Subset join(Subset a, Subset b) { return a | b; }
  bool contains(Subset s) const { return std::binary_search(ideals.begin(), ideals.end(), s, size_then_bits); }

  /// Closure under meet and join together with the distributive law, checked on all triples.
  bool check_distributive() const {
    for (Subset a : ideals)
      for (Subset b : ideals) {
        if (!contains(meet(a, b)) || !contains(join(a, b))) return false;
        for (Subset c : ideals)
          if (meet(a, join(b, c)) != join(meet(a, b), meet(a, c))) return false;
      }
    return true;
  }

  /// Covering pairs of the inclusion order, as indices into `ideals`.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < ideals.size(); ++i)
      for (std::size_t j = 0; j < ideals.size(); ++j)
        if (ideals[j].size() == ideals[i].size() + 1 && ideals[i].subset_of(ideals[j])) out.emplace_back(i, j);
    return out;
  }
};

inline IdealLattice ideal_lattice(const AlgebraHandle& alg) {
  IdealLattice lat{alg, lower_sets(*alg.base, alg.carrier)};
  std::sort(lat.ideals.begin(), lat.ideals.end(), size_then_bits);
  return lat;
}

inline AlgebraHandle quotient(const AlgebraHandle& alg, const IdealModel& ideal) {
  if (!(ideal.algebra == alg)) throw NotAnIdeal("ideal belongs to a different algebra");
  if (!is_lower_set(*alg.base, ideal.lower_set, alg.carrier))
    throw NotAnIdeal("{" + join(alg.base->labels_of(ideal.lower_set)) + "} is not a lower subset of the carrier");
  return {alg.base, alg.carrier - ideal.lower_set};
}

/// Soc_1 ⊂ Soc_2 ⊂ ... given by the cumulative Krull layers of the carrier.
inline std::vector<IdealModel> socle_series(const AlgebraHandle& alg) {
  std::vector<IdealModel> out;
  for (Subset s : krull_filtration(*alg.base, alg.carrier).cumulative()) out.push_back({alg, s});
  return out;
}

inline bool is_semiartinian(const AlgebraHandle& alg) {
  Subset covered;
  for (Subset l : krull_filtration(*alg.base, alg.carrier).layers) {
    if (l.empty()) return false;
    covered |= l;
  }
  return covered == alg.carrier;
}

inline std::size_t loewy_length(const AlgebraHandle& alg) {
  return krull_filtration(*alg.base, alg.carrier).layers.size();
}

inline void require_upper_carrier(const AlgebraHandle& alg) {
  if (!is_upper_set(*alg.base, alg.carrier))
    throw NotUpperSet("carrier {" + join(alg.base->labels_of(alg.carrier)) + "} is not an upper subset");
}

inline bool is_prime(const AlgebraHandle& alg) {
  require_upper_carrier(alg);
  return is_downward_directed(*alg.base, alg.carrier);
}

inline bool is_primitive(const AlgebraHandle& alg) {
  require_upper_carrier(alg);
  return has_coinitial_chain(*alg.base, alg.carrier);
}

inline bool has_identity(const AlgebraHandle& alg) { return is_finitely_sheltered(*alg.base, alg.carrier); }

struct SpectrumReport {
  PosetPtr poset;
  /// {A not<=} over nonempty chains A, deduplicated, smallest first.
  std::vector<Subset> primitive_ideals;
  /// psi[i] = {i not<=}
  std::vector<Subset> psi;
  /// Distinct values of psi, smallest first.
  std::vector<Subset> psi_image;
  bool psi_is_iso = false;
};

inline SpectrumReport primitive_spectrum(const PosetPtr& p) {
  SpectrumReport r;
  r.poset = p;
  for (Subset a : all_chains(*p, p->all())) r.primitive_ideals.push_back(not_above(*p, a));
  for (std::size_t i = 0; i < p->size(); ++i) r.psi.push_back(not_above(*p, i));
  auto dedup = [](std::vector<Subset>& v) {
    std::sort(v.begin(), v.end(), size_then_bits);
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedup(r.primitive_ideals);
  r.psi_image = r.psi;
  dedup(r.psi_image);
  bool order_match = r.psi_image.size() == p->size();
  for (std::size_t i = 0; i < p->size() && order_match; ++i)
    for (std::size_t j = 0; j < p->size() && order_match; ++j)
      if (r.psi[i].subset_of(r.psi[j]) != p->le(i, j)) order_match = false;
  r.psi_is_iso = order_match && r.psi_image == r.primitive_ideals;
  return r;
}

/// K0 of B(I) realised on G(I): the basis element i stands for the class [u_i].
template <class Int = BigInt>
class K0Model {
 public:
  using Combination = std::vector<std::pair<std::string, Int>>;

  explicit K0Model(PosetPtr p) : p_(std::move(p)) {
    if (p_->empty()) throw EmptyPoset("K0 model of the empty poset");
    for (std::size_t i = 0; i < p_->size(); ++i) {
      tags_.push_back("[u_" + p_->label(i) + "]");
      index_.emplace(tags_.back(), i);
    }
  }

  const PosetPtr& poset() const { return p_; }
  const std::vector<std::string>& basis_tags() const { return tags_; }
  const std::string& rho(std::size_t i) const { return tags_.at(i); }
  std::size_t rho_inverse(const std::string& tag) const {
    auto it = index_.find(tag);
    if (it == index_.end()) throw UnknownLabel("unknown K0 basis class '" + tag + "'");
    return it->second;
  }

  HahnElement<Int> to_group(const Combination& c) const {
    HahnElement<Int> x(p_);
    for (const auto& [tag, v] : c) {
      const std::size_t i = rho_inverse(tag);
      x.set(i, x[i] + v);
    }
    return x;
  }
  Combination from_group(const HahnElement<Int>& x) const {
    Combination c;
    for (std::size_t i = 0; i < p_->size(); ++i)
      if (x[i] != 0) c.emplace_back(tags_[i], x[i]);
    return c;
  }

  bool is_positive(const Combination& c) const { return posalg::is_positive(to_group(c)).positive; }

  /// [u_i] <= [u_j], evaluated in G(I).
  bool basis_leq(std::size_t i, std::size_t j) const {
    return leq(HahnElement<Int>::basis(p_, i), HahnElement<Int>::basis(p_, j));
  }

  /// Class of the identity of B(I): the sum of [u_m] over maximal m.
  Combination class_of_identity() const { return from_group(order_unit<Int>(p_)); }

 private:
  PosetPtr p_;
  std::vector<std::string> tags_;
  std::map<std::string, std::size_t> index_;
};

}  // namespace posalg
