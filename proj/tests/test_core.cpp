#include <gtest/gtest.h>

#include "ctalg/ctalg.hpp"
#include "oracles.hpp"

using namespace ctalg;

namespace {

LaurentPoly px(const std::string& s) { return parse_expression(s).numerator(); }

LaurentPoly random_poly(oracle::Rng& rng, int n) {
  LaurentPoly p;
  const int terms = rng.uniform(0, 4);
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    for (int v = 1; v <= n; ++v) m.set(v, rng.uniform(-2, 2));
    Rational c(rng.uniform(-5, 5), rng.uniform(1, 3));
    c.canonicalize();
    p.add_term(m, c);
  }
  return p;
}

}  // namespace

TEST(Rational, CanonicalText) {
  EXPECT_EQ(to_string(Rational(3, 4) + Rational(3, 4)), "3/2");
  EXPECT_EQ(to_string(Rational(1, 2) + Rational(3, 2)), "2");
  EXPECT_EQ(to_string(Rational(0)), "0");
  EXPECT_EQ(parse_rational("-10/4"), Rational(-5, 2));
  EXPECT_EQ(parse_rational("7"), Rational(7));
}

TEST(Rational, ParseRejects) {
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
  try {
    parse_rational("2i");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ComplexConstant);
  }
}

TEST(Rational, Binomials) {
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(-1, 3), -1);
  EXPECT_EQ(binomial(-2, 2), 3);
  EXPECT_EQ(binomial(3, 5), 0);
  EXPECT_EQ(factorial(6), 720);
}

TEST(Monomial, TextForm) {
  Monomial m;
  m.set(1, 2);
  m.set(3, -1);
  m.set_slack(1);
  EXPECT_EQ(m.to_string(), "x1^2*x3^-1*w");
  m.set_slack(2);
  EXPECT_EQ(m.to_string(), "x1^2*x3^-1*w^2");
  EXPECT_EQ(Monomial{}.to_string(), "1");
}

TEST(Monomial, SparseStoresNoZeros) {
  Monomial m = Monomial::var(2, 3);
  m.set(2, 0);
  EXPECT_TRUE(m.is_one());
  EXPECT_TRUE((Monomial::ratio(1, 2) * Monomial::ratio(2, 1)).is_one());
}

TEST(LaurentArith, AdditiveInverse) {
  EXPECT_TRUE((px("x1/x2") + px("-x1/x2")).is_zero());
}

TEST(LaurentArith, Distributivity) {
  EXPECT_EQ(px("1-x1/x2") * px("1-x2/x1"), px("2 - x1/x2 - x2/x1"));
}

TEST(LaurentArith, MultiplicativeIdentity) {
  const LaurentPoly p = px("3*x1^2/x4 - x2");
  EXPECT_EQ(p * LaurentPoly::constant(1), p);
}

TEST(LaurentArith, RingLawsOnRandomInputs) {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_poly(rng, 3);
    const auto b = random_poly(rng, 3);
    const auto c = random_poly(rng, 3);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + LaurentPoly{}, a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(LaurentSubstitute, Examples) {
  EXPECT_EQ(lp_substitute(px("x1/x2"), 1, 1, 2, 1), LaurentPoly::monomial(Monomial::slack(1)));
  EXPECT_EQ(lp_substitute(px("x3/x1"), 1, 1, 3, 0), LaurentPoly::constant(1));
  EXPECT_EQ(lp_substitute(px("x2^2"), 1, 1, 2, 0), px("x2^2"));
  EXPECT_EQ(lp_substitute(px("x1^2"), 1, Rational(1, 2), 3, 0), px("x3^2/4"));
}

TEST(LaurentSubstitute, RejectsZeroConstant) {
  EXPECT_THROW(lp_substitute(px("x1"), 1, 0, 2, 0), Error);
  EXPECT_THROW(lp_substitute(px("x1"), 1, 1, 1, 0), Error);
}

TEST(SlackTaylor, Examples) {
  const auto w2 = lp_slack_taylor(LaurentPoly::monomial(Monomial::slack(2)), 2);
  ASSERT_EQ(w2.size(), 3u);
  EXPECT_EQ(w2[0], LaurentPoly::constant(1));
  EXPECT_EQ(w2[1], LaurentPoly::constant(2));
  EXPECT_EQ(w2[2], LaurentPoly::constant(1));

  const LaurentPoly r = px("x2/x3");
  const auto lin = lp_slack_taylor(r * Monomial::slack(1), 1);
  EXPECT_EQ(lin[0], r);
  EXPECT_EQ(lin[1], r);

  const auto one = lp_slack_taylor(LaurentPoly::constant(1), 4);
  EXPECT_EQ(one[0], LaurentPoly::constant(1));
  for (std::size_t k = 1; k < one.size(); ++k) EXPECT_TRUE(one[k].is_zero());
}

TEST(SlackTaylor, Recombines) {
  oracle::Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    LaurentPoly p;
    int top = 0;
    for (int t = 0; t < 4; ++t) {
      const int s = rng.uniform(0, 4);
      top = std::max(top, s);
      Monomial m = Monomial::var(rng.uniform(1, 3), rng.uniform(-2, 2));
      m.set_slack(s);
      p.add_term(m, Rational(rng.uniform(-3, 3)));
    }
    const auto a = lp_slack_taylor(p, top);
    LaurentPoly back;
    const LaurentPoly wm1 = LaurentPoly::monomial(Monomial::slack(1)) - LaurentPoly::constant(1);
    LaurentPoly pw = LaurentPoly::constant(1);
    for (const auto& ak : a) {
      back += ak * pw;
      pw *= wm1;
    }
    EXPECT_EQ(back, p);
  }
}

TEST(Homogeneity, Examples) {
  EXPECT_EQ(lp_homogeneous_degree(px("x1/x2 + x3/x1")), 0);
  EXPECT_EQ(lp_homogeneous_degree(px("x1*x2")), 2);
  try {
    lp_homogeneous_degree(px("x1 + x1*x2"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotHomogeneous);
  }
  try {
    lp_homogeneous_degree(LaurentPoly{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroInput);
  }
}

TEST(Homogeneity, Multiplicative) {
  oracle::Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const LaurentPoly p = LaurentPoly::monomial(Monomial::var(1, rng.uniform(-3, 3))) * oracle::random_numerator(rng, 3);
    const LaurentPoly q = LaurentPoly::monomial(Monomial::var(2, rng.uniform(-3, 3))) * oracle::random_numerator(rng, 3);
    EXPECT_EQ(lp_homogeneous_degree(p * q), lp_homogeneous_degree(p) + lp_homogeneous_degree(q));
  }
}

TEST(DivideFactor, Examples) {
  EXPECT_EQ(lp_try_divide_factor(px("1 - x2/x1"), 1, 2), LaurentPoly::constant(1));
  EXPECT_FALSE(lp_try_divide_factor(px("2 - x2/x1"), 1, 2).has_value());
  EXPECT_EQ(lp_try_divide_factor(px("(1 - x2/x1)*x2/x3"), 1, 2), px("x2/x3"));
}

TEST(DivideFactor, QuotientMultipliesBack) {
  oracle::Rng rng(13);
  int divisible = 0;
  for (int trial = 0; trial < 200; ++trial) {
    LaurentPoly p = random_poly(rng, 4);
    if (rng.coin()) p *= factor_power(1, 3, 1);
    const auto q = lp_try_divide_factor(p, 1, 3);
    EXPECT_EQ(q.has_value(), lp_identify(p, 3, 1).is_zero());
    if (q) {
      ++divisible;
      EXPECT_EQ(*q * factor_power(1, 3, 1), p);
    }
  }
  EXPECT_GT(divisible, 50);
}

TEST(Words, ParseAndPrint) {
  const auto w = OperatorWord::parse("[6,2][5,6][1,2]");
  EXPECT_EQ(w.degree(), 3);
  EXPECT_EQ(w.to_string(), "[6,2][5,6][1,2]");
  EXPECT_EQ(w.application_order().front().head, 1);
  EXPECT_TRUE(OperatorWord::parse("id").is_identity());
  EXPECT_EQ(OperatorWord{}.to_string(), "id");
  EXPECT_THROW(OperatorWord::parse("[1,1]"), Error);
  EXPECT_THROW(OperatorWord::parse("[1,2"), Error);
}

TEST(Words, CombosDropZeros) {
  OperatorCombo c = OperatorCombo::of(OperatorWord::parse("[2,1]"));
  c -= OperatorCombo::of(OperatorWord::parse("[2,1]"));
  EXPECT_TRUE(c.is_empty());
  OperatorCombo d = OperatorCombo::of(OperatorWord::parse("[2,1]")) + OperatorCombo::of(OperatorWord{});
  EXPECT_EQ(d.by_degree().size(), 2u);
}
