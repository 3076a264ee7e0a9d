#include <gtest/gtest.h>

#include "posalg/fixtures.hpp"
#include "posalg/functors.hpp"
#include "posalg/truncation_checks.hpp"

using namespace posalg;

namespace {

using M = SparseMat<Rational>;

TruncationSpace space(const char* name, std::size_t n = 2) { return TruncationSpace(share(*fixtures::by_name(name)), n); }

std::vector<std::size_t> block_sizes(const std::vector<PointSet>& blocks) {
  std::vector<std::size_t> out;
  for (const auto& b : blocks) out.push_back(b.count());
  return out;
}

}  // namespace

TEST(Truncation, PointCounts) {
  EXPECT_EQ(space("chain2").size(), 4U);
  EXPECT_EQ(space("antichain2").size(), 8U);
  EXPECT_EQ(space("empty").size(), 1U);
  EXPECT_EQ(space("chain2", 3).size(), 9U);
  EXPECT_THROW(space("chain2", 1), NTooSmall);
}

TEST(Truncation, PartitionBlocks) {
  const auto s = space("chain2");
  EXPECT_EQ(block_sizes(partition_P(s, 1)), (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(block_sizes(partition_P(s, 0)), (std::vector<std::size_t>{1, 1, 1, 1}));
}

TEST(Truncation, PhiOnUnits) {
  for (const char* name : {"chain2", "V", "antichain2"}) {
    const auto s = space(name);
    for (std::size_t i = 0; i < s.poset().size(); ++i) {
      EXPECT_EQ(phi_embed(s, i, M::identity(s.q_dim(i))), M::identity(s.size())) << name;
      const std::size_t uc = s.local(i).up_codes.size();
      for (std::size_t a = 0; a < s.chains().size(); ++a)
        for (std::size_t cu = 0; cu < uc; ++cu) {
          const std::size_t idx = a * uc + cu;
          EXPECT_EQ(phi_embed(s, i, M::unit(s.q_dim(i), idx, idx)), zeta(block_P(s, i, cu, a))) << name;
        }
    }
  }
}

TEST(Truncation, PsiOnUnits) {
  for (const char* name : {"chain2", "V", "lambda"}) {
    const auto s = space(name);
    for (std::size_t i = 0; i < s.poset().size(); ++i) {
      EXPECT_EQ(psi_embed(s, i, M::identity(s.x_dim(i))), zeta(X_i(s, i))) << name;
      const std::size_t uc = s.local(i).up_codes.size();
      for (std::size_t e = 0; e < s.local(i).chains_up.size(); ++e)
        for (std::size_t cu = 0; cu < uc; ++cu) {
          const std::size_t idx = e * uc + cu;
          EXPECT_EQ(psi_embed(s, i, M::unit(s.x_dim(i), idx, idx)), zeta(Y_set(s, i, cu, e))) << name;
        }
    }
  }
}

TEST(Truncation, EmbeddingsAreMultiplicative) {
  const auto s = space("diamond");
  std::mt19937_64 rng(kDefaultSeed);
  for (std::size_t i = 0; i < s.poset().size(); ++i)
    for (int t = 0; t < 100; ++t) {
      const auto a = random_sparse<Rational>(s.q_dim(i), rng), b = random_sparse<Rational>(s.q_dim(i), rng);
      EXPECT_EQ(phi_embed(s, i, a * b), phi_embed(s, i, a) * phi_embed(s, i, b));
      const auto c = random_sparse<Rational>(s.x_dim(i), rng), d = random_sparse<Rational>(s.x_dim(i), rng);
      EXPECT_EQ(psi_embed(s, i, c * d), psi_embed(s, i, c) * psi_embed(s, i, d));
      EXPECT_EQ(psi_extract(s, i, psi_embed(s, i, c)), c);
    }
}

TEST(Truncation, Memberships) {
  const auto s = space("chain3");
  for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(in_Q(s, i, M::identity(s.size())));
  // Q(I,b) is contained in Q(I,a) for a < b.
  const auto big = TruncationSpace(share(fixtures::chain(2)), 4);
  const auto z = zeta(block_P(big, 1, 0, 0));
  EXPECT_TRUE(in_Q(big, 1, z));
  EXPECT_TRUE(in_Q(big, 0, z));
  std::mt19937_64 rng(kDefaultSeed);
  const auto m = phi_embed(big, 0, random_sparse<Rational>(big.q_dim(0), rng));
  EXPECT_TRUE(in_Q(big, 0, m));
}

TEST(Truncation, ReverseContainmentFailsForIncomparable) {
  const auto s = TruncationSpace(share(fixtures::antichain(2)), 4);
  bool witness = false;
  for (const auto& b : partition_P(s, 1))
    if (!in_Q(s, 0, zeta(b))) witness = true;
  EXPECT_TRUE(witness);
}

TEST(Truncation, ProductLaws) {
  const auto a = space("antichain2");
  EXPECT_TRUE((zeta(X_i(a, 0)) * zeta(X_i(a, 1))).is_zero());
  const auto c = space("chain2");
  const auto prod = zeta(X_i(c, 0)) * zeta(X_i(c, 1));
  EXPECT_FALSE(prod.is_zero());
  EXPECT_EQ(prod, zeta(X_i(c, 0) & X_i(c, 1)));
  const auto v = space("V");
  std::mt19937_64 rng(kDefaultSeed);
  const auto r = product_laws<Rational>(v, v.poset().index("b"), v.poset().index("c"), rng);
  EXPECT_TRUE(r.passed) << r.detail;
  for (const auto& g : H_generators<Rational>(v, 1))
    for (const auto& h : H_generators<Rational>(v, 2)) EXPECT_TRUE((g * h).is_zero());
}

TEST(Truncation, UnitCheck) {
  const auto c = space("chain2");
  const auto whole = unit_check(c, c.poset().all());
  EXPECT_TRUE(whole.passed);
  EXPECT_EQ(whole.u, M::identity(c.size()));
  const auto a = space("antichain2");
  const auto ua = unit_check(a, a.poset().all());
  EXPECT_TRUE(ua.passed);
  EXPECT_EQ(ua.u, M::identity(a.size()));
  const auto bad = unit_check(c, c.poset().subset_of({"a"}));
  EXPECT_FALSE(bad.passed);
  EXPECT_FALSE(bad.sheltered);
  EXPECT_TRUE(bad.failing_generator.has_value());
}

TEST(Truncation, IndependenceFailsAtFiniteN) {
  for (std::size_t n : {2, 3}) {
    const auto r = independence_probe(space("chain2", n));
    EXPECT_TRUE(r.witness_found);
    EXPECT_TRUE(r.verified);
    EXPECT_TRUE(r.witness_is_identity);
    EXPECT_EQ(r.lower, "a");
  }
}

TEST(Truncation, FHatIdentity) {
  auto p = share(fixtures::vee());
  const TruncationSpace s(p, 2);
  const auto id = PosetMorphism::identity(p);
  std::mt19937_64 rng(kDefaultSeed);
  for (std::size_t i = 0; i < 3; ++i)
    for (int t = 0; t < 10; ++t) {
      const auto m = random_H<Rational>(s, i, rng);
      EXPECT_EQ(f_hat(s, s, id, i, m), m);
    }
}

TEST(Truncation, FHatOnUpperSubset) {
  auto one = share(Poset::make("b", {"b"}, {}));
  auto c2 = share(fixtures::chain(2));
  const auto f = PosetMorphism::make(one, c2, {{"b", "b"}});
  const TruncationSpace si(one, 2), sj(c2, 2);
  const Rational k(3, 2);
  EXPECT_EQ(f_hat(si, sj, f, 0, k * zeta(X_i(si, 0))), k * zeta(X_i(sj, 1)));
  EXPECT_THROW(f_hat(si, sj, f, 0, M::unit(si.size(), 0, 1)), NotInSubalgebra);
  std::string why;
  EXPECT_TRUE(f_hat_multiplicative(f, 2, 50, kDefaultSeed, &why)) << why;
}

TEST(Truncation, SuiteRational) {
  for (const char* name : {"chain2", "V", "lambda"}) {
    for (const auto& c : truncation_suite<Rational>(space(name))) EXPECT_TRUE(c.passed) << name << ": " << c.summary(2);
  }
}

TEST(Truncation, SuiteGF2) {
  TruncationSuiteOptions opt;
  opt.separation = false;
  for (const char* name : {"chain2", "V"})
    for (const auto& c : truncation_suite<GF2>(space(name), opt)) EXPECT_TRUE(c.passed) << name << ": " << c.summary(2);
}

TEST(Truncation, MatrixAlgebraBasics) {
  const M a = M::unit(3, 0, 1), b = M::unit(3, 1, 2);
  EXPECT_EQ(a * b, M::unit(3, 0, 2));
  EXPECT_TRUE((b * a).is_zero());
  EXPECT_EQ(a + a - a, a);
  EXPECT_THROW(M(2).set(5, 0, Rational(1)), IndexMismatch);
}
