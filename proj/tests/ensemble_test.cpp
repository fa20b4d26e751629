#include <gtest/gtest.h>

#include "cluster/catalog/quivers.hpp"
#include "cluster/ensemble.hpp"

using namespace cluster;

namespace {

RationalFunction fa(const std::string& s, std::size_t n) { return parse_function(s, indexed_names("a", n)); }

}  // namespace

TEST(Ensemble, MarkovExchangeAtNode1) {
  const ASeed s = mutate_a(initial_a_seed(catalog::markov()), 0);
  EXPECT_EQ(s.vars[0], fa("(a2^2 + a3^2)/a1", 3));
  EXPECT_EQ(s.vars[1], fa("a2", 3));
  EXPECT_EQ(s.vars[2], fa("a3", 3));
}

TEST(Ensemble, A2EmptyInProduct) {
  const ASeed s = mutate_a(initial_a_seed(catalog::a2()), 0);
  EXPECT_EQ(s.vars[0], fa("(1 + a2)/a1", 2));
}

TEST(Ensemble, MutationsAreInvolutions) {
  for (const auto& name : catalog::names()) {
    const Quiver q = catalog::build(name).quiver;
    const ASeed a = initial_a_seed(q);
    const XSeed x = initial_x_seed(q);
    for (std::size_t k : q.mutable_nodes()) {
      EXPECT_EQ(mutate_a(mutate_a(a, k), k), a) << name << " node " << k + 1;
      EXPECT_EQ(mutate_x(mutate_x(x, k), k), x) << name << " node " << k + 1;
    }
  }
}

TEST(Ensemble, AMutationTouchesOneVariable) {
  const ASeed s = apply_path(initial_a_seed(catalog::somos4()), {0, 2});
  const ASeed t = mutate_a(s, 1);
  for (std::size_t i = 0; i < 4; ++i) {
    if (i != 1) EXPECT_EQ(t.vars[i], s.vars[i]);
  }
}

TEST(Ensemble, XMutationLeavesNonNeighbours) {
  const Quiver q = catalog::a_n(3);
  const XSeed t = mutate_x(initial_x_seed(q), 0);
  EXPECT_EQ(t.vars[2], parse_function("x3", x_names(q)));
  EXPECT_EQ(t.vars[0], parse_function("1/x1", x_names(q)));
}

TEST(Ensemble, AffineA1CompositeFixesG) {
  const Quiver q = catalog::a1_affine();
  const XSeed s = mutate_x(initial_x_seed(q), 0);
  const RationalFunction g = parse_function("(x2*(x1 + 1) + 1)^2/(x1*x2)", x_names(q));
  // {1,(12)}: substitute x1 -> x2', x2 -> x1'.
  EXPECT_EQ(substitute(g, {s.vars[1], s.vars[0]}), g);
}

TEST(Ensemble, RhoCommutesWithMutation) {
  for (const auto& name : catalog::names()) {
    const Quiver q = catalog::build(name).quiver;
    const ASeed a = initial_a_seed(q);
    for (std::size_t k : q.mutable_nodes())
      EXPECT_EQ(rho(mutate_a(a, k)), mutate_x(rho(a), k)) << name << " node " << k + 1;
  }
}

TEST(Ensemble, RhoPins) {
  const Quiver a1 = catalog::a1_affine();
  const RationalFunction g = parse_function("(x2*(x1 + 1) + 1)^2/(x1*x2)", x_names(a1));
  EXPECT_EQ(rho_pullback(a1, g), fa("(1 + a1^2 + a2^2)/(a1*a2)", 2).pow(2));
  const Quiver m = catalog::markov();
  EXPECT_EQ(rho_pullback(m, parse_function("x1*x2*x3", x_names(m))), RationalFunction(3, 1));
}

TEST(Ensemble, RhoWithFrozenNode) {
  // 1 -> 2 <- 3, node 3 frozen: no x3, but a3 enters rho*(x2).
  const Quiver q = Quiver({{0, 1, 0}, {-1, 0, -1}, {0, 1, 0}}, {}, {2});
  const XSeed r = rho(initial_a_seed(q));
  ASSERT_EQ(r.vars.size(), 2u);
  EXPECT_EQ(r.vars[0], fa("a2", 3));
  EXPECT_EQ(r.vars[1], fa("1/(a1*a3)", 3));
}

TEST(Ensemble, ApplyPath) {
  const Quiver q = catalog::a3_cycle();
  EXPECT_EQ(apply_path(initial_a_seed(q), {}), initial_a_seed(q));
  EXPECT_EQ(apply_path(initial_a_seed(q), {0, 0}), initial_a_seed(q));
  const Quiver p = q.mutate({0, 1, 2, 0});
  EXPECT_TRUE(is_isomorphism(q, p, {0, 2, 1}));
  EXPECT_THROW(apply_path(initial_a_seed(q), {0, 7}), IllegalMutation);
}

TEST(Ensemble, LaurentChecks) {
  EXPECT_TRUE(laurent_check(initial_a_seed(catalog::markov())));
  EXPECT_TRUE(positive_laurent_check(apply_path(initial_a_seed(catalog::markov()), {0, 1, 2, 0, 2, 1, 0, 1})));
  EXPECT_TRUE(positive_laurent_check(apply_path(initial_a_seed(catalog::somos4()), {0, 1, 2, 3, 0, 1})));
  ASeed bad = initial_a_seed(catalog::a2());
  bad.vars[0] = fa("1/(a1 + a2)", 2);
  EXPECT_FALSE(laurent_check(bad));
}

TEST(Ensemble, LaurentWalkAcrossCatalog) {
  for (const auto& name : catalog::names()) {
    const Quiver q = catalog::build(name).quiver;
    const LaurentWalkReport r = laurent_walk(initial_a_seed(q), 200, 1);
    EXPECT_EQ(r.steps, 200u) << name;
    EXPECT_TRUE(r.all_positive_laurent) << name;
  }
}
