#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "posalg/errors.hpp"
#include "posalg/poset.hpp"

namespace posalg {

/// A map between the element sets of two posets.
struct PosetMorphism {
  PosetPtr source;
  PosetPtr target;
  std::vector<std::size_t> map;

  static PosetMorphism make(PosetPtr source, PosetPtr target, const std::map<std::string, std::string>& labels) {
    PosetMorphism f{source, target, std::vector<std::size_t>(source->size())};
    std::vector<bool> seen(source->size(), false);
    for (const auto& [a, b] : labels) {
      const std::size_t i = source->index(a);
      f.map[i] = target->index(b);
      seen[i] = true;
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (!seen[i]) throw UnknownLabel("morphism does not map source element '" + source->label(i) + "'");
    return f;
  }

  static PosetMorphism identity(PosetPtr p) {
    PosetMorphism f{p, p, std::vector<std::size_t>(p->size())};
    for (std::size_t i = 0; i < p->size(); ++i) f.map[i] = i;
    return f;
  }

  std::size_t operator()(std::size_t i) const { return map.at(i); }

  Subset image(Subset s) const {
    Subset out;
    for (std::size_t i : s) out.insert(map[i]);
    return out;
  }
  Subset image() const { return image(source->all()); }
  Subset preimage(Subset t) const {
    Subset out;
    for (std::size_t i = 0; i < map.size(); ++i)
      if (t.contains(map[i])) out.insert(i);
    return out;
  }
  std::optional<std::size_t> preimage_of(std::size_t j) const {
    for (std::size_t i = 0; i < map.size(); ++i)
      if (map[i] == j) return i;
    return std::nullopt;
  }

  bool operator==(const PosetMorphism& o) const {
    return map == o.map && source->same_order(*o.source) && target->same_order(*o.target);
  }
};

/// g after f.
inline PosetMorphism compose(const PosetMorphism& g, const PosetMorphism& f) {
  if (!f.target->same_order(*g.source)) throw PosetMismatch("morphisms are not composable");
  PosetMorphism h{f.source, g.target, std::vector<std::size_t>(f.map.size())};
  for (std::size_t i = 0; i < f.map.size(); ++i) h.map[i] = g.map[f.map[i]];
  return h;
}

inline bool is_injective(const PosetMorphism& f) { return f.image().size() == f.map.size(); }

inline bool is_isotone(const PosetMorphism& f) {
  for (std::size_t i = 0; i < f.map.size(); ++i)
    for (std::size_t j : f.source->up(i))
      if (!f.target->le(f.map[i], f.map[j])) return false;
  return true;
}

/// i <= i' exactly when f(i) <= f(i').
inline bool is_order_embedding(const PosetMorphism& f) {
  for (std::size_t i = 0; i < f.map.size(); ++i)
    for (std::size_t j = 0; j < f.map.size(); ++j)
      if (f.source->le(i, j) != f.target->le(f.map[i], f.map[j])) return false;
  return true;
}

enum class MorphismDiagnosis { Ok, NotIsotone, NotInjective, NotOrderEmbedding, ImageNotUpperSet };

inline const char* to_string(MorphismDiagnosis d) {
  switch (d) {
    case MorphismDiagnosis::Ok: return "ok";
    case MorphismDiagnosis::NotIsotone: return "not isotone";
    case MorphismDiagnosis::NotInjective: return "not injective";
    case MorphismDiagnosis::NotOrderEmbedding: return "not an order embedding";
    case MorphismDiagnosis::ImageNotUpperSet: return "image is not an upper subset";
  }
  return "?";
}

struct MorphismCheck {
  bool ok = true;
  MorphismDiagnosis diagnosis = MorphismDiagnosis::Ok;
};

/// Order embedding onto an upper subset of the target.
inline MorphismCheck is_pos_morphism(const PosetMorphism& f) {
  if (!is_isotone(f)) return {false, MorphismDiagnosis::NotIsotone};
  if (!is_injective(f)) return {false, MorphismDiagnosis::NotInjective};
  if (!is_order_embedding(f)) return {false, MorphismDiagnosis::NotOrderEmbedding};
  if (!is_upper_set(*f.target, f.image())) return {false, MorphismDiagnosis::ImageNotUpperSet};
  return {};
}

inline void require_pos_morphism(const PosetMorphism& f) {
  auto c = is_pos_morphism(f);
  if (!c.ok) throw NotPosMorphism(std::string("not a Pos-morphism: ") + to_string(c.diagnosis));
}

}  // namespace posalg
