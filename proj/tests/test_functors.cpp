#include <gtest/gtest.h>

#include "posalg/fixtures.hpp"
#include "posalg/functors.hpp"

using namespace posalg;

namespace {

using H = HahnElement<BigInt>;

struct Maps {
  PosetPtr one_b = share(Poset::make("b", {"b"}, {}));
  PosetPtr one_a = share(Poset::make("a", {"a"}, {}));
  PosetPtr chain2 = share(fixtures::chain(2));
  PosetPtr ab_c = share(Poset::make("ab+c", {"a", "b", "c"}, {{"a", "b"}}));
  PosetMorphism b_in_chain = PosetMorphism::make(one_b, chain2, {{"b", "b"}});
  PosetMorphism a_in_chain = PosetMorphism::make(one_a, chain2, {{"a", "a"}});
  PosetMorphism b_in_abc = PosetMorphism::make(one_b, ab_c, {{"b", "b"}});
};

}  // namespace

TEST(Morphism, PosMorphismExamples) {
  Maps m;
  EXPECT_TRUE(is_pos_morphism(PosetMorphism::identity(m.chain2)).ok);
  EXPECT_TRUE(is_pos_morphism(m.b_in_chain).ok);
  const auto c = is_pos_morphism(m.a_in_chain);
  EXPECT_FALSE(c.ok);
  EXPECT_EQ(c.diagnosis, MorphismDiagnosis::ImageNotUpperSet);
  EXPECT_THROW(require_pos_morphism(m.a_in_chain), NotPosMorphism);
}

TEST(Morphism, Compose) {
  auto c = share(Poset::make("c", {"c"}, {}));
  auto bc = share(Poset::make("bc", {"b", "c"}, {{"b", "c"}}));
  auto abc = share(fixtures::chain(3));
  const auto f = PosetMorphism::make(c, bc, {{"c", "c"}});
  const auto g = PosetMorphism::make(bc, abc, {{"b", "b"}, {"c", "c"}});
  const auto gf = compose(g, f);
  EXPECT_EQ(gf(0), abc->index("c"));
  EXPECT_TRUE(is_pos_morphism(gf).ok);
}

TEST(Functors, CovariantGroupMap) {
  Maps m;
  const auto g = G_of(m.b_in_chain);
  EXPECT_EQ(g(H::basis(m.one_b, 0)).to_string(), "b");
  EXPECT_FALSE(cone_counterexample(g, 2).has_value());
  const auto id = G_of(PosetMorphism::identity(m.chain2));
  const H x = H::from_labels(m.chain2, {{"a", -2}, {"b", 1}});
  EXPECT_EQ(id(x), x);
}

TEST(Functors, ForcedCovariantExample) {
  auto h = share(Poset::make("H", {"h", "k"}, {{"h", "k"}}));
  auto j = share(Poset::make("K", {"j"}, {}));
  const auto f = PosetMorphism::make(h, j, {{"h", "j"}, {"k", "j"}});
  EXPECT_THROW(G_of(f), NotInjective);
  const H x = H::from_labels(h, {{"h", -2}, {"k", 1}});
  EXPECT_TRUE(is_positive(x).positive);
  const H y = G_of(f, EvalMode::Forced)(x);
  EXPECT_EQ(y.to_string(), "-j");
  EXPECT_FALSE(is_positive(y).positive);
}

TEST(Functors, ForcedContravariantExample) {
  auto i = share(Poset::make("I", {"i", "j", "k"}, {{"i", "j"}, {"i", "k"}}));
  auto j = share(Poset::make("J", {"u", "v"}, {{"u", "v"}}));
  const auto f = PosetMorphism::make(i, j, {{"i", "u"}, {"j", "u"}, {"k", "v"}});
  EXPECT_THROW(G_star_of(f), NotInjective);
  const H y = G_star_of(f, EvalMode::Forced)(H::from_labels(j, {{"u", -1}, {"v", 1}}));
  EXPECT_EQ(y.to_string(), "-i-j+k");
  EXPECT_FALSE(is_positive(y).positive);
}

TEST(Functors, ContravariantCounterexample) {
  Maps m;
  const auto h = G_star_of(m.a_in_chain);
  const auto cx = cone_counterexample(h, 2);
  ASSERT_TRUE(cx.has_value());
  EXPECT_EQ(cx->x.to_string(), "-2a+b");
  EXPECT_EQ(cx->image.to_string(), "-2a");
  EXPECT_EQ(G_star_of(PosetMorphism::identity(m.chain2)), GroupHom::identity(m.chain2));
  EXPECT_FALSE(cone_counterexample(G_star_of(m.b_in_chain), 2).has_value());
}

TEST(Functors, CkMorphisms) {
  Maps m;
  EXPECT_TRUE(ck_check(associated_morphism(PosetMorphism::identity(m.chain2))));
  EXPECT_TRUE(ck_check(associated_morphism(m.b_in_chain)));
  EXPECT_FALSE(ck_check(associated_morphism(m.a_in_chain)));
  auto a2 = share(fixtures::antichain(2));
  const auto collapse = PosetMorphism::make(m.chain2, a2, {{"a", "a"}, {"b", "a"}});
  EXPECT_THROW(associated_morphism(collapse), NotGraphMorphism);
}

TEST(Functors, AlgebraMaps) {
  Maps m;
  EXPECT_EQ(B_of(PosetMorphism::identity(m.chain2)), identity_algebra_map(m.chain2, true));
  EXPECT_EQ(B_star_of(PosetMorphism::identity(m.chain2)), identity_algebra_map(m.chain2, false));
  const auto bs = B_star_of(m.b_in_chain);
  EXPECT_TRUE(bs.on_ideal({m.chain2->subset_of({"a"})}).elems.empty());
  EXPECT_TRUE(B_of(m.b_in_chain).unital);
  EXPECT_FALSE(B_of(m.b_in_abc).unital);
  EXPECT_THROW(B_of(m.a_in_chain), NotPosMorphism);
}

TEST(Functors, Naturality) {
  Maps m;
  EXPECT_TRUE(naturality_check(PosetMorphism::identity(m.chain2), 2).passed());
  const auto r = naturality_check(m.b_in_chain, 2);
  EXPECT_TRUE(r.passed()) << r.detail;
  EXPECT_TRUE(r.truncation.has_value());
  K0Model<BigInt> k_src(m.one_b), k_tgt(m.chain2);
  const auto img = B_star_of(m.b_in_chain).on_k0(k_tgt, k_src, {{"[u_a]", BigInt(1)}});
  EXPECT_TRUE(img.empty());
  EXPECT_TRUE(G_star_of(m.b_in_chain)(H::basis(m.chain2, 0)).is_zero());
}

TEST(Functors, ComposablePairLaws) {
  auto c = share(Poset::make("c", {"c"}, {}));
  auto bc = share(Poset::make("bc", {"b", "c"}, {{"b", "c"}}));
  auto abc = share(fixtures::chain(3));
  const auto f = PosetMorphism::make(c, bc, {{"c", "c"}});
  const auto g = PosetMorphism::make(bc, abc, {{"b", "b"}, {"c", "c"}});
  const auto gf = compose(g, f);
  EXPECT_EQ(G_of(gf), compose(G_of(g), G_of(f)));
  EXPECT_EQ(G_star_of(gf), compose(G_star_of(f), G_star_of(g)));
  EXPECT_EQ(B_of(gf), compose(B_of(g), B_of(f)));
  EXPECT_EQ(B_star_of(gf), compose(B_star_of(f), B_star_of(g)));
  for (const auto* h : {&f, &g, &gf}) EXPECT_TRUE(naturality_check(*h, 2).passed());
}

TEST(FunctorsProperty, PosMorphismIffContravariantIsotone) {
  std::vector<PosetPtr> ps;
  for (auto& p : posets_up_to(3)) ps.push_back(share(std::move(p)));
  for (const auto& a : ps)
    for (const auto& b : ps)
      for (const auto& f : injective_isotone_maps(a, b)) {
        const bool pos = is_pos_morphism(f).ok;
        EXPECT_EQ(pos, !cone_counterexample(G_star_of(f), 2).has_value());
        EXPECT_EQ(pos, ck_check(associated_morphism(f)));
      }
}
