#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "posalg/errors.hpp"
#include "posalg/poset.hpp"

namespace posalg {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

namespace fixtures {

inline std::string letter_label(std::size_t i, std::size_t count) {
  if (count <= 26) return std::string(1, static_cast<char>('a' + i));
  return "e" + std::to_string(i);
}

inline Poset chain(std::size_t k) {
  std::vector<std::string> el;
  std::vector<std::pair<std::string, std::string>> rel;
  for (std::size_t i = 0; i < k; ++i) {
    el.push_back(letter_label(i, k));
    if (i > 0) rel.emplace_back(el[i - 1], el[i]);
  }
  return Poset::make("chain" + std::to_string(k), el, rel);
}

inline Poset antichain(std::size_t k) {
  std::vector<std::string> el;
  for (std::size_t i = 0; i < k; ++i) el.push_back(letter_label(i, k));
  return Poset::make("antichain" + std::to_string(k), el, {});
}

inline Poset singleton() { return Poset::make("singleton", {"a"}, {}); }
inline Poset empty() { return Poset::make("empty", {}, {}); }

inline Poset diamond() {
  return Poset::make("diamond", {"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}});
}

/// a < b, a < c
inline Poset vee() { return Poset::make("V", {"a", "b", "c"}, {{"a", "b"}, {"a", "c"}}); }

/// a < c, b < c
inline Poset lambda() { return Poset::make("lambda", {"a", "b", "c"}, {{"a", "c"}, {"b", "c"}}); }

/// Two interleaved chains a_0..a_k and b_0..b_k with a_h, b_h both below a_{h+1} and b_{h+1}.
inline Poset zigzag_prefix(std::size_t k) {
  std::vector<std::string> el;
  std::vector<std::pair<std::string, std::string>> rel;
  for (std::size_t h = 0; h <= k; ++h) {
    el.push_back("a" + std::to_string(h));
    el.push_back("b" + std::to_string(h));
  }
  for (std::size_t h = 0; h < k; ++h) {
    const auto a = "a" + std::to_string(h), b = "b" + std::to_string(h);
    const auto a1 = "a" + std::to_string(h + 1), b1 = "b" + std::to_string(h + 1);
    rel.insert(rel.end(), {{a, a1}, {b, b1}, {a, b1}, {b, a1}});
  }
  return Poset::make("zigzag" + std::to_string(k), el, rel);
}

/// Two chains a_0<...<a_k and b_0<...<b_k with rungs a_h < b_h.
inline Poset ladder(std::size_t k) {
  std::vector<std::string> el;
  std::vector<std::pair<std::string, std::string>> rel;
  for (std::size_t h = 0; h <= k; ++h) {
    el.push_back("a" + std::to_string(h));
    el.push_back("b" + std::to_string(h));
    rel.emplace_back("a" + std::to_string(h), "b" + std::to_string(h));
    if (h > 0) {
      rel.emplace_back("a" + std::to_string(h - 1), "a" + std::to_string(h));
      rel.emplace_back("b" + std::to_string(h - 1), "b" + std::to_string(h));
    }
  }
  return Poset::make("ladder" + std::to_string(k), el, rel);
}

struct CatalogEntry {
  std::string name;
  std::string description;
  bool parametric;
};

inline std::vector<CatalogEntry> catalog() {
  return {
      {"chain<k>", "k-element chain a<b<...", true},
      {"antichain<k>", "k pairwise incomparable elements", true},
      {"zigzag<k>", "interleaved chains a0..ak, b0..bk, each level below both elements of the next", true},
      {"ladder<k>", "chains a0..ak and b0..bk with rungs ah<bh", true},
      {"diamond", "a<b<d, a<c<d", false},
      {"V", "a<b, a<c", false},
      {"lambda", "a<c, b<c", false},
      {"singleton", "one element", false},
      {"empty", "no elements", false},
  };
}

/// Resolves names such as "chain3", "chain(3)", "zigzag_prefix(1)", "diamond".
inline std::optional<Poset> by_name(const std::string& raw) {
  std::string name;
  for (char c : raw)
    if (c != '(' && c != ')' && c != '_') name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  auto split = std::find_if(name.begin(), name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  const std::string stem(name.begin(), split);
  const std::string digits(split, name.end());
  std::optional<std::size_t> k;
  if (!digits.empty()) {
    if (!std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
        digits.size() > 2)
      return std::nullopt;
    k = std::stoul(digits);
  }
  if (stem == "chain" && k) return chain(*k);
  if (stem == "antichain" && k) return antichain(*k);
  if ((stem == "zigzag" || stem == "zigzagprefix") && k) return zigzag_prefix(*k);
  if (stem == "ladder" && k) return ladder(*k);
  if (k) return std::nullopt;
  if (stem == "diamond") return diamond();
  if (stem == "v" || stem == "vee") return vee();
  if (stem == "lambda") return lambda();
  if (stem == "singleton") return singleton();
  if (stem == "empty") return empty();
  return std::nullopt;
}

}  // namespace fixtures

namespace detail {

/// Order relation of a naturally labelled poset on {0..n-1} as an n*n bit matrix.
using RelMatrix = std::vector<std::uint64_t>;

inline RelMatrix permuted(const RelMatrix& m, const std::vector<std::size_t>& perm) {
  RelMatrix out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if ((m[i] >> j) & 1U) out[perm[i]] |= std::uint64_t{1} << perm[j];
  return out;
}

inline Poset poset_from_matrix(const RelMatrix& m, const std::string& name) {
  const std::size_t n = m.size();
  std::vector<std::string> el;
  std::vector<std::pair<std::string, std::string>> rel;
  for (std::size_t i = 0; i < n; ++i) el.push_back(fixtures::letter_label(i, n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && ((m[i] >> j) & 1U)) rel.emplace_back(el[i], el[j]);
  return Poset::make(name, el, rel);
}

}  // namespace detail

/// All posets with `n` elements up to isomorphism (n <= 6), in a fixed order.
inline std::vector<Poset> posets_up_to_iso(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::set<detail::RelMatrix> seen;
  std::vector<detail::RelMatrix> reps;
  std::vector<std::size_t> perm(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    detail::RelMatrix m(n, 0);
    for (std::size_t i = 0; i < n; ++i) m[i] |= std::uint64_t{1} << i;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if ((mask >> k) & 1U) m[pairs[k].first] |= std::uint64_t{1} << pairs[k].second;
    bool transitive = true;
    for (std::size_t i = 0; i < n && transitive; ++i)
      for (std::size_t j = 0; j < n && transitive; ++j)
        if (((m[i] >> j) & 1U) && (m[j] & ~m[i])) transitive = false;
    if (!transitive) continue;
    std::iota(perm.begin(), perm.end(), 0);
    detail::RelMatrix best = m;
    do {
      auto c = detail::permuted(m, perm);
      if (c < best) best = c;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (seen.insert(best).second) reps.push_back(best);
  }
  std::sort(reps.begin(), reps.end());
  std::vector<Poset> out;
  for (std::size_t k = 0; k < reps.size(); ++k)
    out.push_back(detail::poset_from_matrix(reps[k], "iso" + std::to_string(n) + "_" + std::to_string(k)));
  return out;
}

/// All posets with at most `n` elements up to isomorphism, smallest first.
inline std::vector<Poset> posets_up_to(std::size_t n) {
  std::vector<Poset> out;
  for (std::size_t k = 0; k <= n; ++k) {
    auto v = posets_up_to_iso(k);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

/// Random poset on `n` elements: random acyclic relation on a shuffled natural
/// labelling, closed transitively.
template <class Rng>
Poset random_poset(std::size_t n, Rng& rng, const std::string& name) {
  std::uniform_real_distribution<double> density(0.1, 0.6);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const double d = density(rng);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  detail::RelMatrix m(n, 0);
  for (std::size_t i = 0; i < n; ++i) m[i] |= std::uint64_t{1} << i;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (coin(rng) < d) m[order[a]] |= std::uint64_t{1} << order[b];
  return detail::poset_from_matrix(m, name);
}

/// The standard random corpus: `count` posets with sizes drawn from [lo, hi].
inline std::vector<Poset> random_corpus(std::size_t count, std::size_t lo, std::size_t hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(lo, hi);
  std::vector<Poset> out;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t n = size(rng);
    out.push_back(random_poset(n, rng, "random" + std::to_string(k) + "_n" + std::to_string(n)));
  }
  return out;
}

}  // namespace posalg
