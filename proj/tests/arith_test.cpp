#include <gtest/gtest.h>

#include <random>

#include "cluster/arith.hpp"

using namespace cluster;

namespace {

const VariableNames kA3 = indexed_names("a", 3);
const VariableNames kA4 = indexed_names("a", 4);

RationalFunction fn(const std::string& s, const VariableNames& names = kA3) { return parse_function(s, names); }

Polynomial random_poly(std::mt19937& rng, std::size_t nvars, int terms, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<int> coef(-5, 5);
  std::vector<Term> ts;
  for (int t = 0; t < terms; ++t) {
    std::vector<int32_t> e(nvars);
    for (auto& x : e) x = deg(rng);
    int c = coef(rng);
    if (c == 0) c = 1;
    ts.push_back({Monomial::from_exponents(e), c});
  }
  return Polynomial::from_terms(nvars, ts);
}

RationalFunction random_rf(std::mt19937& rng, std::size_t nvars) {
  Polynomial d = random_poly(rng, nvars, 2, 2);
  while (d.is_zero()) d = random_poly(rng, nvars, 2, 2);
  return RationalFunction(random_poly(rng, nvars, 3, 2), d);
}

}  // namespace

TEST(Arith, AdditiveIdentityAndInverse) {
  RationalFunction f = fn("a1/a2");
  EXPECT_EQ(f + RationalFunction(3), f);
  EXPECT_TRUE((f + (-f)).is_zero());
}

TEST(Arith, SumIsReduced) {
  RationalFunction f = fn("a1^2/(a1*a2)") + fn("a2/a2");
  EXPECT_EQ(f, RationalFunction(Polynomial::variable(3, 0) + Polynomial::variable(3, 1), Polynomial::variable(3, 1)));
  EXPECT_EQ(render(f, kA3), "(a1 + a2)/a2");
}

TEST(Arith, MulDivPow) {
  RationalFunction f = fn("(a1 + 2*a3)/(a2 - a3)");
  EXPECT_EQ(f * RationalFunction(3, 1), f);
  EXPECT_TRUE((f * f.inverse()).is_one());
  EXPECT_EQ(render(fn("(a1+a2)^2"), kA3), "a1^2 + 2*a1*a2 + a2^2");
  EXPECT_EQ(fn("a1^-2"), fn("1/(a1*a1)"));
  EXPECT_THROW(RationalFunction(3).inverse(), ZeroDivision);
  EXPECT_THROW(fn("a1/(a2-a2)"), ParseError);
}

TEST(Arith, RingMismatch) {
  EXPECT_THROW(fn("a1") + parse_function("a1", kA4), RingMismatch);
}

TEST(Arith, GcdExamples) {
  auto p = [](const std::string& s) { return fn(s).numerator(); };
  EXPECT_EQ(gcd(p("a1^2 - a2^2"), p("a1 + a2")), p("a1 + a2"));
  EXPECT_EQ(gcd(p("-2*a1 - 4*a2"), Polynomial(3)), p("2*a1 + 4*a2"));
  EXPECT_EQ(gcd(p("a1*a2"), p("a1*a3")), p("a1"));
  EXPECT_EQ(gcd(p("(a1+a2)*(a2+a3)^2*(a1-a3)"), p("(a2+a3)*(a1-a3)^2*(a1+7)")), p("(a2+a3)*(a1-a3)"));
}

TEST(Arith, GcdDividesRandomProducts) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    Polynomial r = random_poly(rng, 3, 3, 2);
    Polynomial p = random_poly(rng, 3, 3, 2) * r;
    Polynomial q = random_poly(rng, 3, 3, 2) * r;
    if (p.is_zero() || q.is_zero()) continue;
    Polynomial g = gcd(p, q);
    ASSERT_TRUE(divide_exact(p, g).has_value());
    ASSERT_TRUE(divide_exact(q, g).has_value());
    if (!r.is_zero()) {
      ASSERT_TRUE(divide_exact(g, r).has_value());
    }
  }
}

TEST(Arith, FieldIdentitiesRandom) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    RationalFunction f = random_rf(rng, 3);
    RationalFunction g = random_rf(rng, 3);
    if (g.is_zero()) continue;
    ASSERT_EQ((f * g) / g, f);
    ASSERT_EQ((f + g) - g, f);
    ASSERT_TRUE(equal_by_cross_product(f * g, g * f));
  }
}

TEST(Arith, Substitute) {
  std::vector<RationalFunction> swap = {fn("a2"), fn("a1"), fn("a3")};
  EXPECT_EQ(substitute(fn("a1/a2"), swap), fn("a2/a1"));
  RationalFunction f = fn("(a1^2 + a2*a3 - 4)/(a3 + a1*a2)");
  std::vector<RationalFunction> id = {fn("a1"), fn("a2"), fn("a3")};
  EXPECT_EQ(substitute(f, id), f);
  std::vector<RationalFunction> ones(3, RationalFunction(3, 1));
  EXPECT_EQ(substitute(fn("(a1+a2)/a3"), ones), RationalFunction(3, 2));
  std::vector<RationalFunction> pole = {fn("a1"), fn("a2"), RationalFunction(3)};
  EXPECT_THROW(substitute(fn("a1/a3"), pole), ZeroDivision);
}

TEST(Arith, SubstituteIsHomomorphism) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    RationalFunction f = random_rf(rng, 3);
    RationalFunction g = random_rf(rng, 3);
    std::vector<RationalFunction> images;
    for (int i = 0; i < 3; ++i) {
      RationalFunction h = random_rf(rng, 3);
      while (h.is_zero()) h = random_rf(rng, 3);
      images.push_back(h);
    }
    try {
      RationalFunction sf = substitute(f, images);
      RationalFunction sg = substitute(g, images);
      ASSERT_EQ(substitute(f + g, images), sf + sg);
      ASSERT_EQ(substitute(f * g, images), sf * sg);
    } catch (const ZeroDivision&) {
    }
  }
}

TEST(Arith, LaurentAndDenominatorVectors) {
  RationalFunction markov = fn("(a1^2 + a2^2 + a3^2)/(a1*a2*a3)");
  EXPECT_TRUE(markov.is_laurent());
  EXPECT_EQ(markov.denominator_vector(), (ExponentVector{1, 1, 1}));
  VariableNames x6 = indexed_names("x", 6);
  EXPECT_EQ(parse_function("x1/x4", x6).denominator_vector(), (ExponentVector{-1, 0, 0, 1, 0, 0}));
  EXPECT_FALSE(fn("1/(a1+a2)").is_laurent());
  EXPECT_THROW(fn("1/(a1+a2)").denominator_vector(), NotLaurent);
  EXPECT_TRUE(markov.is_positive_laurent());
  EXPECT_FALSE(fn("(a1 - a2)/a3").is_positive_laurent());
}

TEST(Arith, DenominatorVectorShiftsByMonomial) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> e(-3, 3);
  RationalFunction f = fn("(a1^2*a3 + a2 + 5)/(a1*a2^2)");
  for (int trial = 0; trial < 20; ++trial) {
    ExponentVector m = {e(rng), e(rng), e(rng)};
    ExponentVector got = (f * RationalFunction::laurent_monomial(3, m)).denominator_vector();
    ExponentVector base = f.denominator_vector();
    for (int i = 0; i < 3; ++i) ASSERT_EQ(got[i], base[i] - m[i]);
  }
}

TEST(Arith, Evaluate) {
  RationalFunction markov = fn("(a1^2 + a2^2 + a3^2)/(a1*a2*a3)");
  EXPECT_EQ(evaluate_exact(markov, {1, 1, 1}), 3);
  EXPECT_EQ(evaluate_exact(fn("a1/a2"), {2, 1, 1}), 2);
  RationalFunction f4 = parse_function("(a1^2*a4^2 + a1*a3^3 + a4*a2^3 + a2^2*a3^2)/(a1*a2*a3*a4)", kA4);
  EXPECT_EQ(evaluate_exact(f4, {1, 1, 1, 1}), 4);
  EXPECT_THROW(evaluate_exact(fn("1/(a1-a2)"), {1, 1, 1}), ZeroDivision);
  EXPECT_DOUBLE_EQ(evaluate_float(markov, {1.0, 2.0, 5.0}), 3.0);
  ModP mp{1000000007ULL};
  EXPECT_EQ(evaluate_mod(markov, {1, 1, 1}, mp), std::optional<uint64_t>(3));
}

TEST(Arith, EvaluateCommutesWithOperations) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> v(-9, 9);
  for (int trial = 0; trial < 30; ++trial) {
    RationalFunction f = random_rf(rng, 3);
    RationalFunction g = random_rf(rng, 3);
    std::vector<mpq_class> pt = {mpq_class(v(rng), 7), mpq_class(v(rng), 3), mpq_class(v(rng), 5)};
    try {
      mpq_class ef = evaluate_exact(f, pt);
      mpq_class eg = evaluate_exact(g, pt);
      ASSERT_EQ(evaluate_exact(f + g, pt), ef + eg);
      ASSERT_EQ(evaluate_exact(f * g, pt), ef * eg);
    } catch (const ZeroDivision&) {
    }
  }
}

TEST(Arith, TextRoundTrip) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    RationalFunction f = random_rf(rng, 3);
    ASSERT_EQ(fn(render(f, kA3)), f);
  }
  EXPECT_EQ(render(fn("2 a1 a2 - 3"), kA3), "2*a1*a2 - 3");
  EXPECT_EQ(render(fn("-a1/(2*a2)"), kA3), "-a1/(2*a2)");
  EXPECT_THROW(fn("a1 + "), ParseError);
  EXPECT_THROW(fn("b1"), ParseError);
}
