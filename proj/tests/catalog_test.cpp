#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "cluster/catalog.hpp"

using namespace cluster;
using namespace cluster::catalog;

namespace {

RationalFunction fa(const std::string& s, std::size_t n) { return parse_function(s, indexed_names("a", n)); }

const RationalFunction kMarkovF = fa("(a1^2 + a2^2 + a3^2)/(a1*a2*a3)", 3);

// Recurrences written out independently of any quiver.
std::vector<mpz_class> somos4_oracle(std::size_t n) {
  std::vector<mpz_class> a(4, 1);
  while (a.size() < n) {
    const std::size_t k = a.size() - 4;
    a.push_back((a[k + 3] * a[k + 1] + a[k + 2] * a[k + 2]) / a[k]);
  }
  return a;
}

std::vector<mpz_class> somos5_oracle(std::size_t n) {
  std::vector<mpz_class> a(5, 1);
  while (a.size() < n) {
    const std::size_t k = a.size() - 5;
    a.push_back((a[k + 4] * a[k + 1] + a[k + 3] * a[k + 2]) / a[k]);
  }
  return a;
}

std::vector<std::string> strs(const std::vector<mpz_class>& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

}  // namespace

TEST(Catalog, BuildAndNames) {
  for (const auto& name : names()) EXPECT_EQ(build(name).name, name);
  EXPECT_EQ(build("g2_affine").quiver.multipliers(), (std::vector<int64_t>{1, 3, 3}));
  EXPECT_EQ(build("t_pqr(1,1,1)").quiver.matrix(), build("a1_affine").quiver.matrix());
  const Quiver m = build("markov").quiver;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) {
        EXPECT_EQ(std::abs(m(i, j)), 2);
      }
  EXPECT_EQ(build("t_pqr(2,2,1)").a_names, (VariableNames{"a1", "a2", "b2", "c2"}));
  EXPECT_EQ(build("a_n(5)").quiver.size(), 5u);
  EXPECT_THROW(build("nope"), CatalogError);
  EXPECT_THROW(build("t_pqr(0,1,1)"), CatalogError);
  EXPECT_THROW(build("t_pqr(1,1)"), CatalogError);
  EXPECT_THROW(build("d4_11(Q5)"), CatalogError);
  EXPECT_THROW(build("d_cycle(2)"), CatalogError);
}

TEST(Catalog, EveryEntryVerifies) {
  for (const auto& name : names()) {
    for (const auto& c : verify(name)) EXPECT_TRUE(c.passed) << name << ": " << c.label << " " << c.detail;
  }
}

TEST(Catalog, InvariantLookup) {
  EXPECT_EQ(invariant("markov", "F").function, kMarkovF);
  EXPECT_EQ(evaluate_exact(invariant("somos4", "F4").function, {1, 1, 1, 1}), 4);
  EXPECT_THROW(invariant("markov", "H"), CatalogError);
  EXPECT_THROW(invariants("nope"), CatalogError);
}

TEST(Catalog, GoldenRenderings) {
  std::ifstream in(CLUSTER_GOLDEN_DIR "/invariants.txt");
  ASSERT_TRUE(in) << "missing golden file";
  std::stringstream expected;
  expected << in.rdbuf();
  std::string actual;
  for (const auto& name : names())
    for (const auto& r : invariants(name)) actual += name + " " + r.name + " = " + render(r.function, r.names) + "\n";
  EXPECT_EQ(actual, expected.str());
}

TEST(Sequences, SomosMatchRecurrences) {
  const auto s4 = somos_sequence(somos4(), 20);
  EXPECT_EQ(strs(s4), strs(somos4_oracle(20)));
  EXPECT_EQ(strs(std::vector<mpz_class>(s4.begin(), s4.begin() + 8)),
            (std::vector<std::string>{"1", "1", "1", "1", "2", "3", "7", "23"}));
  const auto s5 = somos_sequence(somos5(), 20);
  EXPECT_EQ(strs(s5), strs(somos5_oracle(20)));
  EXPECT_EQ(strs(std::vector<mpz_class>(s5.begin(), s5.begin() + 7)),
            (std::vector<std::string>{"1", "1", "1", "1", "1", "2", "3"}));
  EXPECT_EQ(somos_sequence(somos6(), 20).size(), 20u);
  EXPECT_THROW(somos_sequence(somos4(), 3), Error);
}

TEST(Sequences, SomosInvariantsConstant) {
  for (std::size_t k : {4u, 5u, 6u}) {
    const std::string name = "somos" + std::to_string(k);
    const RationalFunction& f = invariants(name).front().function;
    const auto orbit = numeric_orbit(build(name).quiver, shift_generator(k), std::vector<mpq_class>(k, 1), 20);
    for (const auto& s : orbit) EXPECT_EQ(evaluate_exact(f, s), evaluate_exact(f, orbit.front())) << name;
  }
}

TEST(Sequences, MarkovTriples) {
  const auto d0 = markov_triples(0);
  ASSERT_EQ(d0.size(), 1u);
  EXPECT_EQ(d0[0], (Triple{1, 1, 1}));
  const auto d2 = markov_triples(2);
  EXPECT_NE(std::find(d2.begin(), d2.end(), Triple{1, 2, 5}), d2.end());
  for (const auto& t : markov_triples(8)) {
    EXPECT_EQ(t[0] * t[0] + t[1] * t[1] + t[2] * t[2], 3 * t[0] * t[1] * t[2]);
    EXPECT_EQ(gcd(t[0], t[1]), 1);
    EXPECT_EQ(gcd(t[1], t[2]), 1);
    EXPECT_EQ(gcd(t[0], t[2]), 1);
    EXPECT_GT(t[0], 0);
  }
}

TEST(Limits, AffineA1Orbit) {
  const double f = evaluate_float(invariant("a1_affine", "F").function, {1.0, 1.0});
  EXPECT_DOUBLE_EQ(f, 3.0);
  const double lambda = limit_multiplier(f);
  EXPECT_NEAR(lambda, (3.0 + std::sqrt(5.0)) / 2.0, 1e-15);
  EXPECT_DOUBLE_EQ(limit_multiplier(2.0), 1.0);
  EXPECT_THROW(limit_multiplier(1.5), Error);
  const auto a = a1_affine_orbit(1.0, 1.0, 41);
  EXPECT_NEAR(a[40] / a[39], lambda, 1e-9);
  for (std::size_t n = 1; n + 1 < a.size(); ++n) EXPECT_NEAR((a[n - 1] + a[n + 1]) / a[n], f, 1e-9);
  EXPECT_THROW(a1_affine_orbit(0.0, 1.0, 5), Error);
}

TEST(FunctionsTest, Casimirs) {
  const auto m = casimirs(markov());
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0], parse_function("x1*x2*x3", x_names(markov())));
  EXPECT_TRUE(casimirs(a2()).empty());
  const auto a3 = casimirs(a_n(3));
  ASSERT_EQ(a3.size(), 1u);
  EXPECT_EQ(a3[0], parse_function("x1*x3", x_names(a_n(3))));
  EXPECT_TRUE(verify_invariant(markov(), m[0], single_mutation_generators(markov()), Flavor::X));
  // Elsewhere the generators permute the Casimir lattice rather than fix it.
  for (const auto& name : names()) {
    const Quiver q = build(name).quiver;
    const auto cs = casimirs(q);
    for (const auto& c : cs) {
      EXPECT_TRUE(rho_pullback(q, c).is_constant()) << name;
      for (const auto& g : single_mutation_generators(q))
        EXPECT_TRUE(monomial_exponents(act(q, g, c, Flavor::X), cs).has_value()) << name;
    }
  }
}

TEST(FunctionsTest, Freezing) {
  EXPECT_EQ(evaluate_frozen_at_one(kMarkovF, {0, 1}), fa("(a1^2 + a2^2 + 1)/(a1*a2)", 2));
  EXPECT_EQ(evaluate_frozen_at_one(fa("3", 3), {0}), fa("3", 1));
  EXPECT_EQ(evaluate_frozen_at_one(invariant("g2_33", "F2").function, {0, 1}), fa("((a1 + a2)^2 + 1)/(a1*a2)", 2));
  EXPECT_THROW(evaluate_frozen_at_one(fa("1/(a1 - a2)", 3), {2}), ZeroDivision);
}

TEST(FunctionsTest, ZeroEvaluation) {
  const VariableNames x = build("t_pqr(2,2,2)").x_names;
  const RationalFunction g = invariant("t_pqr(2,2,2)", "G").function;
  const RationalFunction g11 = invariant("t_pqr(1,1,1)", "G").function;
  EXPECT_EQ(evaluate_x_at_zero(g, {2, 3, 4}), g11);
  EXPECT_EQ(evaluate_x_at_zero(g11, {}), g11);
  EXPECT_TRUE(evaluate_x_at_zero(invariant("t_pqr(2,2,2)", "y2*h").function, {2, 3, 4}).is_zero());
  EXPECT_THROW(evaluate_x_at_zero(g, {0}), ZeroDivision);
}

TEST(FunctionsTest, Folding) {
  const std::vector<std::vector<std::size_t>> blocks{{0, 3}, {1, 4}, {2, 5}};
  EXPECT_EQ(fold_check(fa("(a1*a4 + a2*a5 + a3*a6)^2/(a1*a2*a3*a4*a5*a6)", 6), blocks), kMarkovF.pow(2));
  EXPECT_EQ(fold_check(fa("(a1*a4 + a2*a5 + a3*a6)/(a4*a5*a6)", 6), blocks), kMarkovF);
  EXPECT_EQ(fold_check(fa("a1/a4", 6), blocks), fa("1", 3));
  EXPECT_THROW(fold_check(fa("a1", 6), {{0, 1}}), RingMismatch);
}

TEST(FunctionsTest, Horocycles) {
  EXPECT_EQ(horocycle_invariant({3, {{0, 1, 2}, {0, 1, 2}}}), kMarkovF * fa("2", 3));
  EXPECT_EQ(horocycle_invariant({3, {{0, 1, 2}}}), kMarkovF);
  EXPECT_TRUE(horocycle_invariant({3, {}}).is_zero());
  EXPECT_THROW(horocycle_invariant({2, {{0, 1, 2}}}), Error);
}

TEST(FunctionsTest, DenominatorCorrespondence) {
  const auto [a, x] = d4_correspondence_basis();
  EXPECT_TRUE(denominator_correspondence(a, x));
  EXPECT_EQ(a[2].denominator_vector(), (ExponentVector{-1, 0, 0, 1, 0, 0}));
  EXPECT_TRUE(denominator_correspondence({kMarkovF}, {parse_function("1/(x1*x2*x3)", x_names(markov()))}));
  EXPECT_FALSE(denominator_correspondence({a[0]}, {x[1]}));
  EXPECT_THROW(denominator_correspondence({fa("1/(a1 + a2)", 2)}, {fa("a1", 2)}), NotLaurent);
  EXPECT_THROW(denominator_correspondence(a, {}), Error);
}

TEST(FunctionsTest, MonomialRepresentation) {
  const Quiver q = g2_33();
  const std::vector<RationalFunction> basis{invariant("g2_33", "F1").function, invariant("g2_33", "F2").function};
  const auto reps = monomial_rep(q, {identity_element(4), g2_tau(), g2_r(), compose(g2_tau(), g2_r())}, basis, Flavor::A);
  EXPECT_EQ(reps[0], (IntMatrix{{1, 0}, {0, 1}}));
  EXPECT_EQ(reps[1], (IntMatrix{{1, 1}, {0, -1}}));
  // {414,(132)} exchanges F1 and F2; the displayed order-6 matrix belongs to tau r.
  EXPECT_EQ(reps[2], (IntMatrix{{0, 1}, {1, 0}}));
  EXPECT_EQ(reps[3], (IntMatrix{{1, 1}, {-1, 0}}));
  const auto xreps = monomial_rep(q, {g2_tau(), g2_r(), compose(g2_tau(), g2_r())}, g2_x_basis(), Flavor::X);
  EXPECT_EQ(xreps[0], reps[1]);
  EXPECT_EQ(xreps[1], reps[2]);
  EXPECT_EQ(xreps[2], reps[3]);
  EXPECT_THROW(monomial_rep(q, {g2_tau()}, {fa("a1", 4)}, Flavor::A), NotLaurent);
}
