#include <gtest/gtest.h>

#include <cstdlib>

#include "ctalg/ctalg.hpp"

using namespace ctalg;

TEST(Dyson, Examples) {
  for (const auto& a : std::vector<std::vector<int>>{{1, 1}, {1, 1, 1}, {0, 0, 0}, {2, 1}, {1, 2, 0}}) {
    const auto r = cmd_dyson(a);
    EXPECT_TRUE(r.match);
    EXPECT_EQ(r.computed, r.expected);
  }
  EXPECT_EQ(cmd_dyson({1, 1}).computed, 2);
  EXPECT_EQ(cmd_dyson({1, 1, 1}).computed, 6);
  EXPECT_EQ(cmd_dyson({0, 0, 0}).computed, 1);
  EXPECT_THROW(cmd_dyson({}), Error);
  EXPECT_THROW(cmd_dyson({1, -1}), Error);
}

TEST(Dyson, AgreesWithTypeAConstantTerm) {
  // The same product written as a type-A element with a polynomial numerator.
  const std::vector<int> a{1, 2, 1};
  LaurentPoly p = LaurentPoly::constant(1);
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      if (i != j) p *= factor_power(j, i, static_cast<unsigned>(a[static_cast<std::size_t>(i - 1)]));
    }
  }
  EXPECT_EQ(ta_full_ct(TypeARational(p)), dyson_ct(a));
}

TEST(LatticeCount, Examples) {
  for (int t = 0; t <= 6; ++t) {
    EXPECT_EQ(brute_force_lattice_count(2, t), t + 1);
    EXPECT_EQ(brute_force_lattice_count(1, t), 1);
  }
  EXPECT_EQ(brute_force_lattice_count(3, 1), 6);
  EXPECT_EQ(brute_force_lattice_count(4, 1), 24);
  EXPECT_EQ(brute_force_lattice_count(3, 2), 21);
}

TEST(Birkhoff, TwoByTwoTerms) {
  for (long t = 0; t <= 5; ++t) {
    EXPECT_EQ(ta_full_ct(birkhoff_term({2, 0}, t)), Rational(t + 1));
    EXPECT_EQ(ta_full_ct(birkhoff_term({1, 1}, t)), 0);
    EXPECT_EQ(ta_full_ct(birkhoff_term({0, 2}, t)), 0);
  }
}

TEST(Birkhoff, SmallCases) {
  const auto h1 = cmd_birkhoff(1, {0, 1, 2, 3}, true, 1);
  EXPECT_EQ(poly_to_string(*h1.polynomial), "1");
  const auto h2 = cmd_birkhoff(2, {0, 1, 2, 3, 4}, true, 1);
  EXPECT_EQ(poly_to_string(*h2.polynomial), "t + 1");
  EXPECT_EQ(cmd_birkhoff(3, {1}, false, 1).values.at(1), 6);
}

TEST(Birkhoff, MatchesBruteForce) {
  std::vector<long> ts;
  for (long t = 0; t <= 9; ++t) ts.push_back(t);
  for (int n = 1; n <= 3; ++n) {
    const auto v = birkhoff_values(n, ts, 2);
    for (long t : ts) EXPECT_EQ(v.at(t), brute_force_lattice_count(n, static_cast<int>(t))) << n << "," << t;
  }
  const auto v4 = birkhoff_values(4, {0, 1, 2}, 2);
  for (long t : {0L, 1L, 2L}) EXPECT_EQ(v4.at(t), brute_force_lattice_count(4, static_cast<int>(t)));
}

TEST(Birkhoff, DegreeIsExact) {
  const auto h2 = cmd_birkhoff(2, {0, 1, 2, 3}, true, 1);
  EXPECT_EQ(h2.polynomial->size(), 2u);
  const auto h3 = cmd_birkhoff(3, {0, 1, 2, 3, 4, 5, 6, 7}, true, 2);
  ASSERT_EQ(h3.polynomial->size(), 5u);
  EXPECT_EQ(poly_to_string(*h3.polynomial), "1/8*t^4 + 3/4*t^3 + 15/8*t^2 + 9/4*t + 1");
  for (long t = 0; t <= 12; ++t) {
    const Rational v = eval_poly(*h3.polynomial, Rational(t));
    EXPECT_EQ(v.get_den(), 1);
  }
}

TEST(Birkhoff, ThreadCountDoesNotChangeResult) {
  const std::vector<long> ts{0, 2, 5};
  EXPECT_EQ(birkhoff_values(3, ts, 1), birkhoff_values(3, ts, 4));
}

TEST(Birkhoff, Errors) {
  try {
    cmd_birkhoff(3, {0, 1, 2}, true, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InsufficientPoints);
  }
  EXPECT_THROW(birkhoff_values(0, {1}), Error);
  EXPECT_THROW(birkhoff_values(2, {-1}), Error);
}

TEST(Interpolation, DetectsMismatch) {
  std::vector<std::pair<Rational, Rational>> pts{{0, 1}, {1, 2}, {2, 3}};
  const auto p = interpolate(pts);
  EXPECT_EQ(p, (std::vector<Rational>{1, 1}));
  EXPECT_EQ(eval_poly(interpolate({{0, 0}, {1, 1}, {2, 4}}), 5), 25);
  EXPECT_EQ(interpolate_checked({{0, 0}, {1, 1}, {2, 4}, {3, 9}}, 3), (std::vector<Rational>{0, 0, 1}));
  try {
    interpolate_checked({{0, 0}, {1, 1}, {2, 4}, {3, 10}}, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InterpolationMismatch);
  }
}

TEST(Threads, Resolution) {
  EXPECT_EQ(resolve_threads(3), 3u);
  setenv("CTALG_THREADS", "5", 1);
  EXPECT_EQ(resolve_threads(0), 5u);
  unsetenv("CTALG_THREADS");
  EXPECT_GE(resolve_threads(0), 1u);
}
