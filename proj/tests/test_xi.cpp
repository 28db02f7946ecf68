#include <gtest/gtest.h>

#include "ctalg/ctalg.hpp"
#include "oracles.hpp"

using namespace ctalg;

namespace {

TypeARational ex(const std::string& s) { return parse_expression(s); }
OperatorWord wd(const std::string& s) { return OperatorWord::parse(s); }
OperatorCombo one(const std::string& s) { return OperatorCombo::of(wd(s)); }

OperatorCombo combo_of(const std::vector<std::pair<std::string, int>>& terms) {
  OperatorCombo c;
  for (const auto& [w, x] : terms) c.add(wd(w), x);
  return c;
}

}  // namespace

TEST(WordApply, Examples) {
  EXPECT_EQ(word_apply(wd("[2,1]"), TypeARational::epsilon(Forest::parse("(1 (2))"))), TypeARational::constant(1));
  EXPECT_EQ(word_apply(wd("[2,3][1,3]"), TypeARational::epsilon(Forest::parse("(3 (1) (2))"))),
            TypeARational::constant(1));
  EXPECT_EQ(word_apply(wd("[2,3][1,3]"), ex("1/((1-x3/x1)*(1-x3/x2))")), TypeARational::constant(1));
  oracle::Rng rng(70);
  for (int t = 0; t < 20; ++t) {
    EXPECT_TRUE(word_apply(wd("[1,2][1,3]"), oracle::random_type_a(rng, 3, 3, 0.9)).is_zero());
  }
}

TEST(ComboApply, Examples) {
  const auto f = ex("x1/x3/((1-x2/x1)^2*(1-x3/x2))");
  EXPECT_EQ(combo_apply(OperatorCombo::of(OperatorWord{}), f), f);
  EXPECT_TRUE(combo_apply(OperatorCombo{}, f).is_zero());
  const OperatorCombo v = combo_of({{"[2,3][1,3]", 1}, {"[1,3][2,3]", -1}, {"[1,3][2,1]", -1}});
  oracle::Rng rng(71);
  for (int t = 0; t < 100; ++t) {
    EXPECT_TRUE(combo_apply(v, oracle::random_type_a(rng, 3, 3, 0.8)).is_zero());
  }
}

TEST(Rules, Commutativity) {
  oracle::Rng rng(72);
  for (int t = 0; t < 40; ++t) {
    const int n = rng.uniform(4, 5);
    const auto f = oracle::random_type_a(rng, n, 3, 0.7);
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    rng.shuffle(v);
    const OperatorWord a{{v[2], v[3]}, {v[0], v[1]}};
    const OperatorWord b{{v[0], v[1]}, {v[2], v[3]}};
    EXPECT_EQ(word_apply(a, f), word_apply(b, f));
  }
}

TEST(Rules, ExchangeAndV) {
  oracle::Rng rng(73);
  for (int t = 0; t < 40; ++t) {
    const int n = rng.uniform(3, 5);
    const auto f = oracle::random_type_a(rng, n, 3, 0.7);
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    rng.shuffle(v);
    const int i = v[0], j = v[1], k = v[2];
    EXPECT_EQ(word_apply(OperatorWord{{j, k}, {i, j}}, f), -word_apply(OperatorWord{{i, k}, {j, i}}, f));
    EXPECT_EQ(word_apply(OperatorWord{{j, k}, {i, k}}, f),
              word_apply(OperatorWord{{i, k}, {j, k}}, f) + word_apply(OperatorWord{{i, k}, {j, i}}, f));
  }
}

TEST(Rules, GeneralExchange) {
  oracle::Rng rng(74);
  for (int t = 0; t < 40; ++t) {
    const int n = rng.uniform(3, 5);
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    rng.shuffle(v);
    const int i = v[0], j = v[1], k = v[2];
    const OperatorWord l = oracle::random_forest_word(rng, n, rng.uniform(0, 2));
    const OperatorWord lhs = OperatorWord{{j, k}} * l * OperatorWord{{i, j}};
    const auto d = forest_of_word(lhs, n);
    const auto f = d ? oracle::random_for_forest(rng, n, *d) : oracle::random_type_a(rng, n, 3, 0.7);
    if (oracle::mentions(l, i)) {
      // x_i is gone after [i,j], so the left side is zero and L|_{j=i} is not a word
      EXPECT_FALSE(d);
      EXPECT_TRUE(word_apply(lhs, f).is_zero());
      continue;
    }
    const OperatorWord rhs = OperatorWord{{i, k}} * l.substitute(j, i) * OperatorWord{{j, i}};
    EXPECT_EQ(word_apply(lhs, f), -word_apply(rhs, f)) << lhs.to_string();
  }
}

TEST(Rules, DigraphIdentification) {
  oracle::Rng rng(75);
  for (int t = 0; t < 60; ++t) {
    const int n = rng.uniform(2, 5);
    const auto w = oracle::random_forest_word(rng, n, rng.uniform(1, n - 1));
    const auto d = forest_of_word(w, n);
    ASSERT_TRUE(d);
    const auto f = oracle::random_for_forest(rng, n, *d);
    EXPECT_EQ(word_apply(w, f), word_apply(forest_realization(*d), f));
  }
}

TEST(Rules, Grading) {
  oracle::Rng rng(76);
  for (int t = 0; t < 60; ++t) {
    const int n = 5;
    const auto a = oracle::random_word(rng, n, rng.uniform(0, 2));
    const auto b = oracle::random_word(rng, n, rng.uniform(0, 2));
    const auto ab = a * b;
    EXPECT_EQ(ab.degree(), a.degree() + b.degree());
    if (ab.degree() > n - 1) {
      EXPECT_FALSE(forest_of_word(ab, n).has_value());
    }
  }
}

TEST(Rewrite, WorkedExample) {
  const SignedWord sw = rewrite_to_nearly_increasing(wd("[2,4][3,2][1,3]"));
  EXPECT_EQ(sw.sign, 1);
  EXPECT_EQ(sw.word.to_string(), "[1,4][2,1][3,1]");
}

TEST(Rewrite, TwoVariables) {
  const SignedWord sw = rewrite_to_increasing(wd("[1,2]"), 2);
  EXPECT_EQ(sw.sign, -1);
  EXPECT_EQ(sw.word.to_string(), "[2,1]");
}

TEST(Rewrite, AlreadyNearlyIncreasing) {
  const SignedWord sw = rewrite_to_nearly_increasing(wd("[1,4][2,1][3,1]"));
  EXPECT_EQ(sw.sign, 1);
  EXPECT_EQ(sw.word.to_string(), "[1,4][2,1][3,1]");
}

TEST(Rewrite, ZeroWord) {
  try {
    rewrite_to_nearly_increasing(wd("[1,2][1,3]"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAForest);
  }
}

TEST(Rewrite, TopDegreeTerminatesOnAllTrees) {
  for (int n = 2; n <= 6; ++n) {
    std::size_t count = 0;
    for (const Forest& t : enumerate_forests(n, n - 1, ForestKind::Any)) {
      const SignedWord sw = rewrite_to_increasing(forest_realization(t), n);
      const auto d = forest_of_word(sw.word, n);
      ASSERT_TRUE(d);
      EXPECT_TRUE(forest_classify(*d).increasing) << t.to_string();
      ++count;
    }
    EXPECT_GT(count, 0u);
  }
}

TEST(Rewrite, SoundOnRandomWords) {
  oracle::Rng rng(77);
  for (int t = 0; t < 60; ++t) {
    const int n = rng.uniform(2, 6);
    const int s = rng.uniform(1, n - 1);
    const auto w = oracle::random_forest_word(rng, n, s);
    const auto d = *forest_of_word(w, n);
    const SignedWord sw = s == n - 1 ? rewrite_to_increasing(w, n) : rewrite_to_nearly_increasing(w);
    const auto nd = forest_of_word(sw.word, n);
    ASSERT_TRUE(nd);
    EXPECT_TRUE(forest_classify(*nd).nearly_increasing);
    EXPECT_EQ(nd->blocks(), d.blocks());
    if (s < n - 1) {
      EXPECT_EQ(nd->roots(), d.roots());
    }
    for (int k = 0; k < 2; ++k) {
      const auto f = oracle::random_for_forest(rng, n, k == 0 ? d : *nd);
      EXPECT_EQ(word_apply(w, f), word_apply(sw.word, f) * Rational(sw.sign)) << w.to_string();
    }
  }
}

TEST(ExpandInBasis, VFormulaInstances) {
  const auto a = expand_in_basis(wd("[2,3][1,3]"), 4);
  EXPECT_EQ(a.to_combo(), combo_of({{"[1,3][2,3]", 1}, {"[1,3][2,1]", 1}}));
  const auto b = expand_in_basis(wd("[3,1][2,1]"), 4);
  EXPECT_EQ(b.to_combo(), combo_of({{"[2,1][3,1]", 1}, {"[2,1][3,2]", 1}}));
}

TEST(ExpandInBasis, TopDegreeThreeVariables) {
  // With n = 3 the same word has top degree and lands on increasing trees.
  const auto e = expand_in_basis(wd("[2,3][1,3]"), 3);
  for (const auto& [f, c] : e.coefficients) EXPECT_TRUE(forest_classify(f).augmented_increasing);
  EXPECT_TRUE(is_zero_operator(e.to_combo() - one("[2,3][1,3]"), 3));
}

TEST(ExpandInBasis, BasisWordIsFixed) {
  for (int s = 0; s <= 3; ++s) {
    for (const Forest& f : basis_forests(4, s)) {
      const auto e = expand_in_basis(forest_realization(f), 4);
      ASSERT_EQ(e.coefficients.size(), 1u);
      EXPECT_EQ(e.coefficients.begin()->first, f);
      EXPECT_EQ(e.coefficients.begin()->second, 1);
    }
  }
}

TEST(ExpandInBasis, ZeroWord) { EXPECT_TRUE(expand_in_basis(wd("[1,2][1,3]"), 3).coefficients.empty()); }

TEST(ExpandInBasis, SoundAndAgreesWithCoefficients) {
  oracle::Rng rng(78);
  for (int t = 0; t < 40; ++t) {
    const int n = rng.uniform(2, 5);
    const int s = rng.uniform(1, n - 1);
    const auto w = oracle::random_forest_word(rng, n, s);
    const auto e = expand_in_basis(w, n);
    for (const auto& [f, c] : e.coefficients) {
      EXPECT_TRUE(s == n - 1 ? forest_classify(f).augmented_increasing
                             : forest_classify(f).augmented_nearly_increasing);
    }
    EXPECT_EQ(basis_coefficients(OperatorCombo::of(w), n, s), e) << w.to_string();
    const auto d = *forest_of_word(w, n);
    const auto f = oracle::random_for_forest(rng, n, d);
    EXPECT_EQ(combo_apply(e.to_combo(), f), word_apply(w, f));
  }
}

TEST(Orthogonality, Examples) {
  const Forest d = Forest::parse("(1 (2) (3))");
  EXPECT_EQ(orthogonality_eval(d, d), TypeARational::constant(1));
  EXPECT_EQ(orthogonality_eval(Forest::parse("(3 (2))"), Forest::parse("(2 (3))")), TypeARational::constant(-1));
  EXPECT_TRUE(orthogonality_eval(Forest::parse("(1 (2 (3)))"), Forest::parse("(1 (2)) (3)")).is_zero());
}

TEST(Orthogonality, IdentityWithinEqualRoots) {
  for (int n = 1; n <= 4; ++n) {
    for (int s = 0; s < n; ++s) {
      std::map<std::vector<int>, std::vector<Forest>> by_roots;
      for (const auto& f : basis_forests(n, s)) by_roots[f.roots()].push_back(f);
      for (const auto& [roots, fs] : by_roots) {
        for (const auto& a : fs) {
          for (const auto& b : fs) {
            EXPECT_EQ(orthogonality_eval(a, b), TypeARational::constant(a == b ? 1 : 0))
                << a.to_string() << " vs " << b.to_string();
          }
        }
      }
    }
  }
}

TEST(Orthogonality, RefinementNecessity) {
  oracle::Rng rng(79);
  int nonzero = 0;
  for (int t = 0; t < 300; ++t) {
    const int n = rng.uniform(2, 5);
    const auto d1 = *forest_of_word(oracle::random_forest_word(rng, n, rng.uniform(0, n - 1)), n);
    const auto d2 = *forest_of_word(oracle::random_forest_word(rng, n, rng.uniform(0, n - 1)), n);
    const Monomial p = oracle::random_degree0_monomial(rng, n, 2);
    const auto v = word_apply(forest_realization(d1), TypeARational::epsilon(d2) * p);
    if (v.is_zero()) continue;
    ++nonzero;
    for (const auto& b1 : d1.blocks()) {
      bool inside = false;
      for (const auto& b2 : d2.blocks()) inside |= std::includes(b2.begin(), b2.end(), b1.begin(), b1.end());
      EXPECT_TRUE(inside);
    }
    EXPECT_EQ(v.denominator().size(), d2.edge_count() - d1.edge_count());
    for (const auto& [pair, m] : v.denominator()) EXPECT_EQ(m, 1);
  }
  EXPECT_GT(nonzero, 20);
}

TEST(ZeroOperator, Examples) {
  EXPECT_TRUE(is_zero_operator(combo_of({{"[2,3][1,3]", 1}, {"[1,3][2,3]", -1}, {"[1,3][2,1]", -1}}), 3));
  EXPECT_TRUE(is_zero_operator(combo_of({{"[1,2]", 1}, {"[2,1]", 1}}), 2));
  EXPECT_FALSE(is_zero_operator(one("[2,1]"), 2));
  EXPECT_FALSE(is_zero_operator(one("[1,2]") + one("[2,1]"), 3));
  EXPECT_TRUE(is_zero_operator(one("[1,2][1,3]"), 3));
  EXPECT_TRUE(is_zero_operator(OperatorCombo{}, 3));
  EXPECT_FALSE(is_zero_operator(OperatorCombo::of(OperatorWord{}), 3));
}

TEST(BasisCoefficients, Examples) {
  const Forest d = Forest::parse("(1 (3)) (2)");
  const auto e = basis_coefficients(OperatorCombo::of(forest_realization(d)), 3, 1);
  ASSERT_EQ(e.coefficients.size(), 1u);
  EXPECT_EQ(e.coefficients.at(d), 1);
  EXPECT_EQ(basis_coefficients(one("[2,3][1,3]"), 4, 2), expand_in_basis(wd("[2,3][1,3]"), 4));
  EXPECT_TRUE(basis_coefficients(OperatorCombo{}, 3, 1).coefficients.empty());
  try {
    basis_coefficients(one("[2,1]") + one("[2,1][3,1]"), 3, 1);
    FAIL();
  } catch (const Error& e2) {
    EXPECT_EQ(e2.kind(), ErrorKind::MixedDegrees);
  }
}

TEST(Dimension, Examples) {
  EXPECT_EQ(xi_dimension(5, 0), 1u);
  EXPECT_EQ(xi_dimension(3, 2), 2u);
  EXPECT_EQ(xi_dimension(3, 1), 6u);
  EXPECT_EQ(xi_dimension(3, 3), 0u);
  EXPECT_EQ(xi_dimension(3, 7), 0u);
  EXPECT_THROW(xi_dimension(3, -1), Error);
}

TEST(Dimension, VerifiedRankSmall) {
  for (int n = 1; n <= 4; ++n) {
    for (int s = 0; s < n; ++s) {
      const auto rep = xi_dimension_verified(n, s);
      EXPECT_EQ(rep.rank, rep.dimension) << n << "," << s;
    }
  }
}

TEST(Dimension, SingleVariable) {
  EXPECT_EQ(xi_dimension(1, 0), 1u);
  EXPECT_EQ(basis_forests(1, 0).size(), 1u);
  EXPECT_EQ(ta_full_ct(TypeARational::constant(Rational(7, 3))), Rational(7, 3));
  EXPECT_FALSE(is_zero_operator(OperatorCombo::of(OperatorWord{}), 1));
  EXPECT_EQ(combo_apply(OperatorCombo::of(OperatorWord{}), TypeARational::constant(5)), TypeARational::constant(5));
}
