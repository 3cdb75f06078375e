#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "gcurrents/pushforward.hpp"
#include "gcurrents/random.hpp"
#include "gcurrents/spectral.hpp"
#include "printers.hpp"

using namespace gcurrents;

namespace {

Word W(int rank, const std::string& s) { return Word::parse(rank, s); }

Automorphism tribonacci() {
  return Automorphism(3, {W(3, "ab"), W(3, "ac"), W(3, "a")}, std::vector{W(3, "c"), W(3, "Ca"), W(3, "Cb")},
                      "tribonacci");
}

Automorphism tribonacci_inverse() { return *tribonacci().inverse(); }

/// Every |w| <= depth value of the oracle lies in the certified interval.
void expect_contains(const GeneralPushResult& r, const TruncatedCurrent& oracle, const std::string& ctx) {
  std::vector<Word> all;
  detail::enumerate_words(r.rank, r.depth, all);
  for (const auto& w : all) {
    auto cv = r.at(w);
    EXPECT_TRUE(cv.contains(oracle.value(w))) << ctx << " at " << w.str() << ": " << to_string(oracle.value(w))
                                              << " not in [" << to_string(cv.lower) << ", "
                                              << to_string(cv.upper()) << "]";
  }
}

}  // namespace

TEST(PushRational, Examples) {
  EXPECT_EQ(push_rational(tribonacci(), W(3, "c"), 3), rational_current(W(3, "a"), 3));
  EXPECT_EQ(push_rational(Automorphism::identity(3), W(3, "abC"), 3), rational_current(W(3, "abC"), 3));
  EXPECT_EQ(push_rational(tribonacci_inverse(), W(3, "a"), 3), rational_current(W(3, "c"), 3));
  EXPECT_THROW(push_rational(tribonacci(), W(3, ""), 2), PreconditionError);
}

TEST(PushPositive, MuCMatchesRationalOracle) {
  for (int d = 1; d <= 4; ++d) {
    EXPECT_EQ(push_positive(tribonacci(), rational_current(W(3, "c"), d), d), push_rational(tribonacci(), W(3, "c"), d));
  }
}

TEST(PushPositive, PermutationRelabels) {
  Automorphism swap(2, {W(2, "b"), W(2, "a")});
  auto mu = rational_current(W(2, "aab"), 3);
  EXPECT_EQ(push_positive(swap, mu, 3), rational_current(W(2, "bba"), 3));
}

TEST(PushPositive, RejectsBadInputs) {
  EXPECT_THROW(push_positive(tribonacci_inverse(), rational_current(W(3, "a"), 2), 2), PreconditionError);
  EXPECT_THROW(push_positive(tribonacci(), rational_current(W(3, "abc"), 2), 3), PreconditionError);
  // Mixed-sign support on a current too shallow to resolve the cancellation.
  EXPECT_THROW(push_positive(tribonacci(), rational_current(W(3, "aC"), 2), 2), PreconditionError);
}

TEST(PushPositive, RandomCyclicWordsMatchOracleExactly) {
  gen::Rng rng(51);
  for (int trial = 0; trial < 60; ++trial) {
    Word w = gen::cyclically_reduced_word(rng, 3, static_cast<std::size_t>(gen::uniform(rng, 1, 8)));
    auto mu = rational_current(w, 24);
    EXPECT_EQ(push_positive(tribonacci(), mu, 3), push_rational(tribonacci(), w, 3)) << w.str();
  }
}

TEST(PushPositive, PositiveSupportUsesBlocksAndConservesLengthMass) {
  gen::Rng rng(52);
  auto t = tribonacci();
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Letter> letters;
    int len = gen::uniform(rng, 1, 8);
    for (int i = 0; i < len; ++i) letters.push_back(Letter(gen::uniform(rng, 1, 3), 1));
    Word w = Word::from_reduced(3, letters);
    auto mu = rational_current(w, 3);
    ASSERT_TRUE(detail::junction_free(t, mu));
    auto nu = push_positive(t, mu, 3);
    EXPECT_EQ(nu, push_rational(t, w, 3)) << w.str();
    Rational weighted;
    for (int g = 1; g <= 3; ++g) {
      for (int s : {1, -1}) weighted += mu.value(Word::letter(3, Letter(g, s))) * t.image(Letter(g, s)).size();
    }
    EXPECT_EQ(nu.level_mass(1), weighted);
  }
}

TEST(PushGeneral, IdentityDecidesImmediately) {
  auto mu = rational_current(W(3, "abCbb"), 3);
  auto r = push_general(Automorphism::identity(3), mu, 3);
  EXPECT_TRUE(r.exact());
  EXPECT_EQ(r.undecided_cylinder_mass, 0);
  // Refinements only extend windows to the right, once per short support word.
  std::size_t short_words = 0;
  for (const auto& [w, v] : mu.values()) short_words += w.size() < 3;
  EXPECT_EQ(r.steps, short_words);
  for (const auto& [w, v] : mu.values()) {
    EXPECT_EQ(r.at(w).lower, v);
    EXPECT_EQ(r.at(w).undecided_mass, 0);
  }
  EXPECT_EQ(r.values.size(), mu.values().size());
}

TEST(PushGeneral, InverseOnMuAConvergesWithBudget) {
  auto mu = rational_current(W(3, "a"), 12);
  Rational previous = -1;
  for (std::size_t budget : {0u, 1u, 2u, 4u, 16u, 1000u}) {
    auto r = push_general(tribonacci_inverse(), mu, 2, {budget, std::nullopt});
    EXPECT_TRUE(r.at(W(3, "c")).contains(1)) << budget;
    if (previous >= 0) {
      EXPECT_LE(r.undecided_cylinder_mass, previous);
    }
    previous = r.undecided_cylinder_mass;
  }
  EXPECT_EQ(previous, 0);
}

TEST(PushGeneral, IntervalsNestWithBudget) {
  auto mu = rational_current(W(3, "abC"), 16);
  auto oracle = push_rational(tribonacci_inverse(), W(3, "abC"), 2);
  std::vector<Word> all;
  detail::enumerate_words(3, 2, all);
  std::optional<GeneralPushResult> prev;
  for (std::size_t budget = 0; budget <= 40; budget += 2) {
    auto r = push_general(tribonacci_inverse(), mu, 2, {budget, std::nullopt});
    expect_contains(r, oracle, "budget " + std::to_string(budget));
    if (prev) {
      EXPECT_LE(r.undecided_cylinder_mass, prev->undecided_cylinder_mass);
      for (const auto& w : all) {
        EXPECT_GE(r.at(w).lower, prev->at(w).lower) << w.str();
        EXPECT_LE(r.at(w).upper(), prev->at(w).upper()) << w.str();
      }
    }
    prev = r;
  }
}

TEST(PushGeneral, AgreesWithPushPositiveOnPositiveAutomorphism) {
  gen::Rng rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = gen::uniform(rng, 1, 3);
    auto mu = gen::rational_combination(rng, 3, 12, 3, 6);
    auto r = push_general(tribonacci(), mu, d);
    ASSERT_TRUE(r.exact());
    auto nu = push_positive(tribonacci(), mu, d);
    ValueTable certified;
    for (const auto& [w, cv] : r.values) certified.emplace(w, cv.lower);
    EXPECT_EQ(certified, nu.values());
  }
}

TEST(PushGeneral, RandomWordsContainOracleForBothDirections) {
  gen::Rng rng(54);
  for (int trial = 0; trial < 60; ++trial) {
    Word w = gen::cyclically_reduced_word(rng, 3, static_cast<std::size_t>(gen::uniform(rng, 1, 8)));
    auto mu = rational_current(w, 24);
    for (const auto& a : {tribonacci(), tribonacci_inverse()}) {
      auto r = push_general(a, mu, 3);
      expect_contains(r, push_rational(a, w, 3), a.name() + " " + w.str());
      EXPECT_LE(r.undecided_cylinder_mass, mu.level_mass(1) / 1000) << w.str();
    }
  }
}

TEST(PushGeneral, ShallowInputReportsDepthExhaustion) {
  auto r = push_general(tribonacci_inverse(), rational_current(W(3, "abC"), 2), 2);
  EXPECT_TRUE(r.depth_exhausted);
  EXPECT_GT(r.undecided_cylinder_mass, 0);
  expect_contains(r, push_rational(tribonacci_inverse(), W(3, "abC"), 2), "shallow");
}

TEST(PushGeneral, CapIsReportedNotFatal) {
  auto r = push_general(tribonacci_inverse(), rational_current(W(3, "abC"), 16), 2, {0, Rational(0)});
  EXPECT_TRUE(r.budget_exhausted);
  EXPECT_TRUE(r.cap_exceeded);
}

TEST(PushGeneral, NeedsInverseImagesWhenSupportCancels) {
  Automorphism no_inv(3, {W(3, "c"), W(3, "Ca"), W(3, "Cb")});
  EXPECT_THROW(push_general(no_inv, rational_current(W(3, "ab"), 4), 2), PreconditionError);
  EXPECT_THROW(push_general(tribonacci(), counting_current(W(3, "abc"), 2), 2), PreconditionError);
}

TEST(LeftAction, Examples) {
  auto t = tribonacci();
  EXPECT_TRUE(left_action_check(t, t, rational_current(W(3, "c"), 3), 3));
  EXPECT_EQ(push_rational(compose(t, t), W(3, "c"), 3), rational_current(W(3, "ab"), 3));
  EXPECT_TRUE(left_action_check(Automorphism::identity(3), t, rational_current(W(3, "abC"), 12), 3));
  EXPECT_TRUE(left_action_check(t, tribonacci_inverse(), rational_current(W(3, "bc"), 16), 2));
}

TEST(LeftAction, RandomWords) {
  gen::Rng rng(55);
  auto t = tribonacci();
  auto ti = tribonacci_inverse();
  Automorphism f(3, {W(3, "b"), W(3, "ca"), W(3, "c")}, std::vector{W(3, "Cb"), W(3, "a"), W(3, "c")});
  for (int trial = 0; trial < 100; ++trial) {
    Word w = gen::reduced_word(rng, 3, static_cast<std::size_t>(gen::uniform(rng, 1, 10)));
    EXPECT_TRUE(left_action_check(t, f, w, 3));
    EXPECT_TRUE(left_action_check(ti, t, w, 3));
    EXPECT_TRUE(left_action_check(f, ti, w, 3));
  }
}

TEST(PushPositive, EigenEquationOnAttractingCurrent) {
  auto t = tribonacci();
  const double lambda = pf_eigen(transition_matrix(t)).lambda;
  double prev = 1e9;
  for (int n : {10, 15, 20}) {
    auto mu = attracting_current(t, 2, n);
    double dist = sup_distance_scaled(push_positive(t, mu, 2), mu, lambda, 2);
    EXPECT_LE(dist, prev + 1e-6) << n;
    prev = dist;
  }
  EXPECT_LE(prev, 1e-3);
}
