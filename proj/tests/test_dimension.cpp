#include <gtest/gtest.h>

#include "posalg/dimension.hpp"
#include "posalg/fixtures.hpp"

using namespace posalg;

namespace {

SearchPolicy bound(int b) {
  SearchPolicy p;
  p.bound = b;
  return p;
}

}  // namespace

TEST(Dimension, InterpolationSmallCases) {
  const auto c = check_interpolation(fixtures::chain(2), bound(2));
  EXPECT_TRUE(c.passed);
  EXPECT_TRUE(c.exhaustive);
  EXPECT_TRUE(check_interpolation(fixtures::antichain(2), bound(2)).passed);
}

TEST(Dimension, UnperforationDiamond) {
  SearchPolicy pol = bound(2);
  pol.n_max = 3;
  const auto r = check_unperforation(fixtures::diamond(), pol);
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.exhaustive);
}

TEST(Dimension, OrderUnitAndConical) {
  EXPECT_TRUE(check_order_unit(fixtures::diamond(), bound(3)).passed);
  EXPECT_TRUE(check_conical(fixtures::zigzag_prefix(1)).passed);
  EXPECT_THROW(check_order_unit(fixtures::empty()), EmptyPoset);
}

TEST(Dimension, PrimesAreMinimalElements) {
  auto l = share(fixtures::lambda());
  EXPECT_EQ(prime_basis_elements(l, 3), (std::vector<std::string>{"a", "b"}));
  auto d = share(fixtures::diamond());
  EXPECT_EQ(prime_basis_elements(d, 3), (std::vector<std::string>{"a"}));
}

TEST(Dimension, SuiteOnFixtures) {
  for (const char* name : {"chain3", "antichain3", "diamond", "V", "lambda", "singleton", "zigzag1", "ladder1"}) {
    const auto p = fixtures::by_name(name);
    ASSERT_TRUE(p.has_value()) << name;
    for (const auto& c : dimension_group_suite(*p, bound(2))) EXPECT_TRUE(c.passed) << name << ": " << c.summary();
  }
}

TEST(Dimension, SamplingIsSeeded) {
  SearchPolicy pol;
  pol.exhaustive_limit = 1000;
  const auto p = fixtures::ladder(3);
  const auto a = check_conical(p, pol), b = check_conical(p, pol);
  EXPECT_FALSE(a.exhaustive);
  EXPECT_EQ(a.instances, b.instances);
  EXPECT_EQ(a.summary(), b.summary());
}

TEST(Dimension, SolverFindsBetweenElement) {
  const auto p = fixtures::antichain(2);
  ConeSolver solver(p);
  const Vec x{0, 0}, y{1, 1}, lo{-3, -3}, hi{3, 3};
  const Vec nx{0, 0};
  const ConeSolver::Constraint cons[] = {{&nx, +1}, {&y, -1}};
  const auto z = solver.solve(cons, lo, hi);
  ASSERT_TRUE(z.has_value());
  EXPECT_TRUE(in_cone(p, z->data()));
  const Vec d{y[0] - (*z)[0], y[1] - (*z)[1]};
  EXPECT_TRUE(in_cone(p, d.data()));
}
