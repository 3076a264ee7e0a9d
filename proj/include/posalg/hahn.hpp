#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "posalg/errors.hpp"
#include "posalg/poset.hpp"

namespace posalg {

using BigInt = boost::multiprecision::cpp_int;

/// Position of a maximal support element with non-positive coefficient, if any.
/// `c` has one coefficient per element of `p`.
template <class Int>
std::optional<std::size_t> cone_violation(const Poset& p, const Int* c) {
  Subset supp;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (c[i] != 0) supp.insert(i);
  for (std::size_t i : supp)
    if (!p.strictly_above(i).intersects(supp) && c[i] <= 0) return i;
  return std::nullopt;
}

template <class Int>
bool in_cone(const Poset& p, const Int* c) {
  return !cone_violation(p, c).has_value();
}

/// Element of the free abelian group on the elements of a poset.
template <class Int = BigInt>
class HahnElement {
 public:
  HahnElement() = default;
  explicit HahnElement(PosetPtr parent) : parent_(std::move(parent)), c_(parent_->size(), Int(0)) {}
  HahnElement(PosetPtr parent, std::vector<Int> coeffs) : parent_(std::move(parent)), c_(std::move(coeffs)) {
    if (c_.size() != parent_->size()) throw PosetMismatch("coefficient vector length differs from poset size");
  }

  static HahnElement basis(PosetPtr parent, std::size_t i) {
    HahnElement x(std::move(parent));
    x.c_.at(i) = 1;
    return x;
  }

  static HahnElement from_labels(PosetPtr parent, const std::vector<std::pair<std::string, Int>>& terms) {
    HahnElement x(parent);
    for (const auto& [label, v] : terms) x.c_[parent->index(label)] += v;
    return x;
  }

  const PosetPtr& parent() const { return parent_; }
  const Poset& poset() const { return *parent_; }
  const std::vector<Int>& coeffs() const { return c_; }
  const Int& operator[](std::size_t i) const { return c_[i]; }
  const Int& coeff(const std::string& label) const { return c_[parent_->index(label)]; }
  void set(std::size_t i, Int v) { c_.at(i) = std::move(v); }

  Subset support() const {
    Subset s;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) s.insert(i);
    return s;
  }
  bool is_zero() const { return support().empty(); }

  bool operator==(const HahnElement& o) const {
    return same_parent(*this, o) && c_ == o.c_;
  }

  /// Terms in element order, e.g. "-2a+b", "3a-3b", "0".
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      const bool neg = c_[i] < 0;
      const Int mag = neg ? Int(-c_[i]) : c_[i];
      if (neg) out += "-";
      else if (!out.empty()) out += "+";
      if (mag != 1) out += to_decimal(mag);
      out += parent_->label(i);
    }
    return out.empty() ? "0" : out;
  }

  static bool same_parent(const HahnElement& a, const HahnElement& b) {
    return a.parent_ == b.parent_ || (a.parent_ && b.parent_ && a.parent_->same_order(*b.parent_));
  }

 private:
  static std::string to_decimal(const Int& v) {
    if constexpr (std::is_integral_v<Int>) return std::to_string(v);
    else return v.str();
  }

  PosetPtr parent_;
  std::vector<Int> c_;
};

template <class Int>
void require_same_parent(const HahnElement<Int>& a, const HahnElement<Int>& b) {
  if (!HahnElement<Int>::same_parent(a, b)) throw PosetMismatch("Hahn elements over different posets");
}

template <class Int>
HahnElement<Int> add(const HahnElement<Int>& a, const HahnElement<Int>& b) {
  require_same_parent(a, b);
  std::vector<Int> c = a.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return HahnElement<Int>(a.parent(), std::move(c));
}

template <class Int>
HahnElement<Int> negate(const HahnElement<Int>& a) {
  std::vector<Int> c = a.coeffs();
  for (auto& v : c) v = -v;
  return HahnElement<Int>(a.parent(), std::move(c));
}

template <class Int>
HahnElement<Int> scale(const Int& n, const HahnElement<Int>& a) {
  std::vector<Int> c = a.coeffs();
  for (auto& v : c) v *= n;
  return HahnElement<Int>(a.parent(), std::move(c));
}

template <class Int>
HahnElement<Int> subtract(const HahnElement<Int>& a, const HahnElement<Int>& b) {
  return add(a, negate(b));
}

template <class Int>
HahnElement<Int> operator+(const HahnElement<Int>& a, const HahnElement<Int>& b) { return add(a, b); }
template <class Int>
HahnElement<Int> operator-(const HahnElement<Int>& a, const HahnElement<Int>& b) { return subtract(a, b); }
template <class Int>
HahnElement<Int> operator-(const HahnElement<Int>& a) { return negate(a); }
template <class Int>
HahnElement<Int> operator*(const Int& n, const HahnElement<Int>& a) { return scale(n, a); }

struct ConeVerdict {
  bool positive = true;
  std::optional<std::string> witness;
};

template <class Int>
ConeVerdict is_positive(const HahnElement<Int>& x) {
  auto bad = cone_violation(x.poset(), x.coeffs().data());
  if (!bad) return {};
  return {false, x.poset().label(*bad)};
}

template <class Int>
bool leq(const HahnElement<Int>& x, const HahnElement<Int>& y) {
  return is_positive(subtract(y, x)).positive;
}

/// Sum of the maximal elements.
template <class Int = BigInt>
HahnElement<Int> order_unit(const PosetPtr& p) {
  if (p->empty()) throw EmptyPoset("order unit of the empty poset");
  HahnElement<Int> u(p);
  for (std::size_t m : maximal_elements(*p)) u.set(m, Int(1));
  return u;
}

/// Positive and negative parts: x = pos - neg with both in the cone.
template <class Int>
std::pair<HahnElement<Int>, HahnElement<Int>> split_parts(const HahnElement<Int>& x) {
  HahnElement<Int> pos(x.parent()), neg(x.parent());
  for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
    if (x[i] > 0) pos.set(i, x[i]);
    if (x[i] < 0) neg.set(i, Int(-x[i]));
  }
  return {pos, neg};
}

/// Decomposition x = a + b with a, b nonzero in the cone, supports below Supp(x),
/// coefficients of a and b in [-bound, bound]. Candidates for a are tried with
/// small coefficients first.
template <class Int>
std::optional<std::pair<HahnElement<Int>, HahnElement<Int>>> find_decomposition(const HahnElement<Int>& x,
                                                                                   int bound) {
  const Poset& p = x.poset();
  if (!is_positive(x).positive) throw NotInCone("element " + x.to_string() + " is not in the positive cone");
  if (x.is_zero()) throw NotInCone("zero has no prime decomposition question");
  const Subset region = lower_closure(p, x.support()).elems;
  std::vector<std::size_t> slots(region.begin(), region.end());
  std::vector<std::int64_t> values{0};
  for (int v = 1; v <= bound; ++v) {
    values.push_back(v);
    values.push_back(-v);
  }
  std::vector<std::size_t> digit(slots.size(), 0);
  std::vector<Int> a(p.size(), Int(0)), b(p.size(), Int(0));
  while (true) {
    for (std::size_t k = 0; k < slots.size(); ++k) a[slots[k]] = Int(values[digit[k]]);
    bool ok = true;
    bool a_zero = true, b_zero = true;
    for (std::size_t i = 0; i < p.size() && ok; ++i) {
      b[i] = x[i] - a[i];
      if (b[i] > bound || b[i] < -bound) ok = false;
      if (a[i] != 0) a_zero = false;
      if (b[i] != 0) b_zero = false;
    }
    if (ok && !a_zero && !b_zero && in_cone(p, a.data()) && in_cone(p, b.data()))
      return std::make_pair(HahnElement<Int>(x.parent(), a), HahnElement<Int>(x.parent(), b));
    std::size_t k = 0;
    while (k < slots.size() && ++digit[k] == values.size()) digit[k++] = 0;
    if (k == slots.size()) break;
  }
  return std::nullopt;
}

template <class Int>
bool is_prime_element(const HahnElement<Int>& x, int coeff_bound) {
  return !find_decomposition(x, coeff_bound).has_value();
}

/// The ideal G(L) of elements supported in the lower set L.
struct GroupIdeal {
  LowerSet lower_set;
  bool operator==(const GroupIdeal&) const = default;

  template <class Int>
  bool contains(const HahnElement<Int>& x) const {
    return x.support().subset_of(lower_set.elems);
  }
};

inline GroupIdeal ideal_from_lower_set(const Poset& p, Subset l) { return {checked_lower_set(p, l)}; }

/// Smallest ideal containing `xs`: each generator is split into its positive and
/// negative parts, both of which lie in any ideal containing it; the ideal is then
/// G of the lower closure of the union of their supports.
template <class Int>
GroupIdeal ideal_generated_by(const std::vector<HahnElement<Int>>& xs) {
  if (xs.empty()) throw std::invalid_argument("ideal_generated_by needs at least one generator");
  Subset s;
  for (const auto& x : xs) {
    require_same_parent(xs.front(), x);
    auto [pos, neg] = split_parts(x);
    s |= pos.support() | neg.support();
  }
  return {lower_closure(xs.front().poset(), s)};
}

}  // namespace posalg
