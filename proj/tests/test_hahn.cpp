#include <gtest/gtest.h>

#include "oracles.hpp"
#include "posalg/fixtures.hpp"
#include "posalg/hahn.hpp"

using namespace posalg;

namespace {

using H = HahnElement<BigInt>;

H el(const PosetPtr& p, std::vector<std::pair<std::string, BigInt>> t) { return H::from_labels(p, t); }

}  // namespace

TEST(Hahn, Arithmetic) {
  auto p = share(fixtures::chain(2));
  const H a = H::basis(p, 0);
  EXPECT_EQ(add(a, a).to_string(), "2a");
  EXPECT_TRUE(add(a, negate(a)).is_zero());
  EXPECT_EQ(add(a, negate(a)).to_string(), "0");
  EXPECT_EQ(scale(BigInt(3), el(p, {{"a", 1}, {"b", -1}})).to_string(), "3a-3b");
}

TEST(Hahn, MismatchedParents) {
  auto p = share(fixtures::chain(2));
  auto q = share(fixtures::antichain(2));
  EXPECT_THROW(add(H::basis(p, 0), H::basis(q, 0)), PosetMismatch);
}

TEST(Hahn, Positivity) {
  auto p = share(fixtures::chain(2));
  EXPECT_TRUE(is_positive(el(p, {{"b", 1}, {"a", -2}})).positive);
  EXPECT_TRUE(is_positive(H(p)).positive);
  auto i = share(Poset::make("I", {"i", "j", "k"}, {{"i", "j"}, {"i", "k"}}));
  const auto v = is_positive(el(i, {{"i", -1}, {"j", -1}, {"k", 1}}));
  EXPECT_FALSE(v.positive);
  EXPECT_EQ(v.witness, "j");
}

TEST(Hahn, Order) {
  auto c = share(fixtures::chain(2));
  EXPECT_TRUE(leq(H::basis(c, 0), H::basis(c, 1)));
  EXPECT_TRUE(leq(H::basis(c, 1), H::basis(c, 1)));
  auto a = share(fixtures::antichain(2));
  EXPECT_FALSE(leq(H::basis(a, 0), H::basis(a, 1)));
}

TEST(Hahn, OrderUnit) {
  EXPECT_EQ(order_unit(share(fixtures::chain(2))).to_string(), "b");
  EXPECT_EQ(order_unit(share(fixtures::antichain(2))).to_string(), "a+b");
  auto d = share(fixtures::diamond());
  const H u = order_unit(d);
  EXPECT_EQ(u.to_string(), "d");
  const H x = el(d, {{"a", 3}, {"b", 3}, {"c", 3}, {"d", 3}});
  int k = 0;
  while (!leq(x, scale(BigInt(k), u))) ++k;
  EXPECT_EQ(k, 4);
  EXPECT_THROW(order_unit(share(fixtures::empty())), EmptyPoset);
}

TEST(Hahn, PrimeElements) {
  auto c = share(fixtures::chain(2));
  EXPECT_TRUE(is_prime_element(H::basis(c, 0), 3));
  const auto dec = find_decomposition(H::basis(c, 1), 3);
  ASSERT_TRUE(dec.has_value());
  EXPECT_EQ(add(dec->first, dec->second), H::basis(c, 1));
  EXPECT_FALSE(is_prime_element(el(c, {{"a", 2}}), 3));
  EXPECT_THROW(is_prime_element(el(c, {{"a", -1}}), 3), NotInCone);
}

TEST(Hahn, GeneratedIdeals) {
  auto c = share(fixtures::chain(2));
  EXPECT_EQ(ideal_generated_by(std::vector<H>{H::basis(c, 0)}).lower_set.elems, c->subset_of({"a"}));
  EXPECT_EQ(ideal_generated_by(std::vector<H>{el(c, {{"b", 1}, {"a", -1}})}).lower_set.elems, c->all());
  auto d = share(fixtures::diamond());
  EXPECT_EQ(ideal_generated_by(std::vector<H>{H::basis(d, 3)}).lower_set.elems, d->all());
  EXPECT_THROW(ideal_from_lower_set(*d, d->subset_of({"b"})), NotLowerSet);
}

TEST(HahnProperty, PositivityMatchesOracle) {
  for (const auto& q : posets_up_to(4)) {
    if (q.empty()) continue;
    auto p = share(q);
    std::vector<std::int64_t> x(p->size(), -2);
    while (true) {
      EXPECT_EQ(in_cone(*p, x.data()), oracle::naive_positive(*p, x)) << p->name();
      std::size_t t = 0;
      while (t < x.size() && x[t] == 2) x[t++] = -2;
      if (t == x.size()) break;
      ++x[t];
    }
  }
}

TEST(HahnProperty, ConeClosedUnderAddition) {
  for (const auto& q : posets_up_to(3)) {
    if (q.empty()) continue;
    std::vector<std::vector<std::int64_t>> cone;
    std::vector<std::int64_t> x(q.size(), -2);
    while (true) {
      if (in_cone(q, x.data())) cone.push_back(x);
      std::size_t t = 0;
      while (t < x.size() && x[t] == 2) x[t++] = -2;
      if (t == x.size()) break;
      ++x[t];
    }
    for (const auto& a : cone)
      for (const auto& b : cone) {
        std::vector<std::int64_t> s(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
        EXPECT_TRUE(in_cone(q, s.data())) << q.name();
      }
  }
}
