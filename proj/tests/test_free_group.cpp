#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "gcurrents/automorphism.hpp"
#include "gcurrents/random.hpp"
#include "gcurrents/word.hpp"
#include "oracles.hpp"

using namespace gcurrents;

namespace {

Word W(int rank, const char* s) { return Word::parse(rank, s); }

Automorphism tribonacci() {
  return Automorphism(3, {W(3, "ab"), W(3, "ac"), W(3, "a")}, std::vector{W(3, "c"), W(3, "Ca"), W(3, "Cb")},
                      "tribonacci");
}

Automorphism fibonacci() { return Automorphism(2, {W(2, "ab"), W(2, "a")}, std::vector{W(2, "b"), W(2, "Ba")}); }

std::vector<std::string> image_strings(const Automorphism& a) {
  std::vector<std::string> out;
  for (const auto& w : a.images()) out.push_back(w.str());
  return out;
}

std::string text(const Word& w) { return w.empty() ? std::string() : w.str(); }

}  // namespace

TEST(Letter, OrderIsIndexThenSign) {
  EXPECT_LT(Letter::parse(2, 'a'), Letter::parse(2, 'A'));
  EXPECT_LT(Letter::parse(2, 'A'), Letter::parse(2, 'b'));
  EXPECT_EQ(Letter::parse(3, 'C').generator(), 3);
  EXPECT_EQ(Letter::parse(3, 'C').sign(), -1);
  EXPECT_EQ(Letter::parse(3, 'c').inverse(), Letter::parse(3, 'C'));
}

TEST(Letter, RejectsOutOfRank) {
  EXPECT_THROW(Letter::parse(2, 'c'), ParseError);
  EXPECT_THROW(Letter::parse(2, '?'), ParseError);
}

TEST(Word, ConcatExamples) {
  EXPECT_EQ(concat(W(3, "ab"), W(3, "Bc")).str(), "ac");
  EXPECT_TRUE(concat(W(1, "a"), W(1, "A")).empty());
  EXPECT_EQ(concat(W(2, "ab"), W(2, "ba")).str(), "abba");
  EXPECT_THROW(concat(W(2, "a"), W(3, "a")), RankMismatch);
}

TEST(Word, InvertExamples) {
  EXPECT_EQ(invert(W(3, "aBc")).str(), "CbA");
  EXPECT_TRUE(invert(W(3, "")).empty());
  EXPECT_EQ(invert(W(3, "a")).str(), "A");
}

TEST(Word, IdentitySyntax) {
  EXPECT_TRUE(W(2, "1").empty());
  EXPECT_TRUE(W(2, "").empty());
  EXPECT_EQ(W(2, "").str(), "1");
}

TEST(Word, FromReducedRejectsCancellation) {
  EXPECT_THROW(Word::from_reduced(2, {Letter(1, 1), Letter(1, -1)}), InvariantError);
}

TEST(Word, ShortlexOrder) {
  EXPECT_LT(W(2, "b"), W(2, "aa"));
  EXPECT_LT(W(2, "ab"), W(2, "Ab"));
  EXPECT_LT(W(2, "aB"), W(2, "ba"));
}

TEST(Word, ReductionMatchesNaiveOracle) {
  gen::Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    int rank = gen::uniform(rng, 1, 3);
    std::string raw;
    int len = gen::uniform(rng, 0, 30);
    for (int i = 0; i < len; ++i) raw += gen::random_letter(rng, rank).to_char();
    EXPECT_EQ(text(W(rank, raw.c_str())), oracle::reduce(raw)) << raw;
  }
}

TEST(Word, ReductionIsConfluent) {
  // Cancel pairs at random positions instead of left to right.
  gen::Rng rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    std::string raw;
    int len = gen::uniform(rng, 0, 24);
    for (int i = 0; i < len; ++i) raw += gen::random_letter(rng, 2).to_char();
    std::string s = raw;
    for (;;) {
      std::vector<std::size_t> spots;
      for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        if (s[i + 1] == oracle::inv(s[i])) spots.push_back(i);
      }
      if (spots.empty()) break;
      s.erase(spots[static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<int>(spots.size()) - 1))], 2);
    }
    EXPECT_EQ(text(W(2, raw.c_str())), s) << raw;
  }
}

TEST(Word, InverseIsInvolution) {
  gen::Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    Word w = gen::reduced_word(rng, 3, static_cast<std::size_t>(gen::uniform(rng, 0, 20)));
    EXPECT_EQ(w.inverse().inverse(), w);
    EXPECT_EQ(text(w.inverse()), oracle::inverse(text(w)));
    EXPECT_TRUE(concat(w, w.inverse()).empty());
  }
}

TEST(Word, ConcatLengthBound) {
  gen::Rng rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    Word u = gen::reduced_word(rng, 2, static_cast<std::size_t>(gen::uniform(rng, 0, 10)));
    Word v = gen::reduced_word(rng, 2, static_cast<std::size_t>(gen::uniform(rng, 0, 10)));
    auto diff = u.size() > v.size() ? u.size() - v.size() : v.size() - u.size();
    EXPECT_GE(concat(u, v).size(), diff);
  }
}

TEST(CyclicReduce, Examples) {
  auto r = cyclic_reduce(W(2, "abA"));
  EXPECT_EQ(r.core.str(), "b");
  EXPECT_EQ(r.conjugator.str(), "a");
  auto s = cyclic_reduce(W(2, "ab"));
  EXPECT_EQ(s.core.str(), "ab");
  EXPECT_TRUE(s.conjugator.empty());
  EXPECT_EQ(cyclic_reduce(W(2, "ab")).core, cyclic_reduce(W(2, "ba")).core);
  EXPECT_THROW(cyclic_reduce(W(2, "")), PreconditionError);
}

TEST(CyclicReduce, ConjugatorReconstructsWord) {
  gen::Rng rng(15);
  for (int trial = 0; trial < 300; ++trial) {
    Word w = gen::reduced_word(rng, 3, static_cast<std::size_t>(gen::uniform(rng, 1, 16)));
    auto r = cyclic_reduce(w);
    EXPECT_TRUE(r.core.word().is_cyclically_reduced());
    EXPECT_EQ(concat(concat(r.conjugator, r.core.word()), r.conjugator.inverse()), w) << w.str();
    EXPECT_EQ(text(r.core.word()), oracle::least_rotation(oracle::cyclic_core(text(w))));
  }
}

TEST(CyclicWord, CanonicalIsLeastRotation) {
  gen::Rng rng(16);
  for (int trial = 0; trial < 300; ++trial) {
    Word w = gen::cyclically_reduced_word(rng, 2, static_cast<std::size_t>(gen::uniform(rng, 1, 14)));
    auto cw = CyclicWord::from_cyclically_reduced(w);
    EXPECT_EQ(cw.str(), oracle::least_rotation(w.str()));
    for (std::size_t k = 0; k < w.size(); ++k) {
      EXPECT_EQ(CyclicWord::from_cyclically_reduced(CyclicWord::rotate(w, k)), cw);
    }
  }
  EXPECT_THROW(CyclicWord::from_cyclically_reduced(W(2, "abA")), InvariantError);
}

TEST(MaxRoot, Examples) {
  auto cw = [](const char* s) { return CyclicWord::from_cyclically_reduced(W(2, s)); };
  EXPECT_EQ(max_root(cw("abab")).root.str(), "ab");
  EXPECT_EQ(max_root(cw("abab")).exponent, 2);
  EXPECT_EQ(max_root(cw("ab")).exponent, 1);
  EXPECT_EQ(max_root(cw("aaa")).root.str(), "a");
  EXPECT_EQ(max_root(cw("aaa")).exponent, 3);
}

TEST(MaxRoot, MatchesDivisorOracle) {
  gen::Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    Word u = gen::cyclically_reduced_word(rng, 2, static_cast<std::size_t>(gen::uniform(rng, 1, 4)));
    Word w = u;
    int m = gen::uniform(rng, 1, 4);
    for (int i = 1; i < m; ++i) w = concat(w, u);
    auto cw = CyclicWord::from_cyclically_reduced(w);
    auto [root, exp] = oracle::root(cw.str());
    auto r = max_root(cw);
    EXPECT_EQ(r.exponent, static_cast<int>(exp)) << w.str();
    EXPECT_EQ(r.root.str(), oracle::least_rotation(root));
  }
}

TEST(Occurrences, Examples) {
  EXPECT_EQ(occurrences(W(2, "aaa"), W(2, "a")), 3u);
  EXPECT_EQ(occurrences(W(2, "aaa"), W(2, "aa")), 2u);
  EXPECT_EQ(occurrences(W(2, "abab"), W(2, "ba")), 1u);
  EXPECT_THROW(occurrences(W(2, "ab"), W(2, "")), PreconditionError);
}

TEST(Occurrences, CyclicExamples) {
  auto ab = CyclicWord::from_cyclically_reduced(W(2, "ab"));
  EXPECT_EQ(cyclic_occurrences(ab, W(2, "a")), 1u);
  EXPECT_EQ(cyclic_occurrences(ab, W(2, "ba")), 1u);
  EXPECT_EQ(cyclic_occurrences(ab, W(2, "aa")), 0u);
  EXPECT_THROW(cyclic_occurrences(ab, W(2, "")), PreconditionError);
}

TEST(Occurrences, MatchNaiveCounts) {
  gen::Rng rng(18);
  for (int trial = 0; trial < 400; ++trial) {
    Word host = gen::reduced_word(rng, 2, static_cast<std::size_t>(gen::uniform(rng, 0, 25)));
    Word pat = gen::reduced_word(rng, 2, static_cast<std::size_t>(gen::uniform(rng, 1, 4)));
    EXPECT_EQ(occurrences(host, pat), oracle::count(text(host), pat.str()));
    Word c = gen::cyclically_reduced_word(rng, 2, static_cast<std::size_t>(gen::uniform(rng, 1, 8)));
    Word p = gen::reduced_word(rng, 2, static_cast<std::size_t>(gen::uniform(rng, 1, 12)));
    auto cw = CyclicWord::from_cyclically_reduced(c);
    EXPECT_EQ(cyclic_occurrences(cw, p), oracle::cyclic_count(cw.str(), p.str())) << c.str() << " " << p.str();
  }
}

TEST(Automorphism, ApplyExamples) {
  auto t = tribonacci();
  EXPECT_EQ(apply(t, W(3, "c")).str(), "a");
  EXPECT_EQ(apply(t, W(3, "A")).str(), "BA");
  auto id = Automorphism::identity(3);
  EXPECT_EQ(apply(id, W(3, "abCa")), W(3, "abCa"));
  EXPECT_THROW(apply(t, W(2, "a")), RankMismatch);
}

TEST(Automorphism, ComposeExamples) {
  auto t = tribonacci();
  auto ti = *t.inverse();
  auto c = compose(t, ti);
  for (int g = 1; g <= 3; ++g) {
    Word x = Word::letter(3, Letter(g, 1));
    EXPECT_EQ(apply(c, x), x);
  }
  auto ci = compose(Automorphism::identity(3), t);
  EXPECT_EQ(ci.images(), t.images());
  EXPECT_EQ(apply(compose(t, t), W(3, "c")).str(), "ab");
  EXPECT_TRUE(compose(t, t).has_inverse());
}

TEST(Automorphism, InverseIsVerified) {
  EXPECT_THROW(Automorphism(3, {W(3, "ab"), W(3, "ac"), W(3, "a")}, std::vector{W(3, "c"), W(3, "Ca"), W(3, "b")}),
               InvariantError);
  EXPECT_THROW(Automorphism(2, {W(2, "ab")}), InvariantError);
  EXPECT_THROW(Automorphism(2, {W(2, "a"), W(2, "")}), InvariantError);
}

TEST(Automorphism, ApplyMatchesNaiveSubstitution) {
  gen::Rng rng(19);
  auto t = tribonacci();
  auto ti = *t.inverse();
  for (int trial = 0; trial < 200; ++trial) {
    Word w = gen::reduced_word(rng, 3, static_cast<std::size_t>(gen::uniform(rng, 0, 20)));
    EXPECT_EQ(text(apply(t, w)), oracle::apply(image_strings(t), text(w)));
    EXPECT_EQ(text(apply(ti, w)), oracle::apply(image_strings(ti), text(w)));
  }
}

TEST(Automorphism, ComposeActsAsComposition) {
  gen::Rng rng(20);
  auto t = tribonacci();
  auto ti = *t.inverse();
  auto f = Automorphism(3, {W(3, "b"), W(3, "a"), W(3, "cab")});
  for (int trial = 0; trial < 200; ++trial) {
    Word w = gen::reduced_word(rng, 3, static_cast<std::size_t>(gen::uniform(rng, 0, 15)));
    EXPECT_EQ(apply(compose(t, f), w), apply(t, apply(f, w)));
    EXPECT_EQ(apply(compose(ti, f), w), apply(ti, apply(f, w)));
  }
}

TEST(Automorphism, InverseUndoesApply) {
  gen::Rng rng(21);
  for (const auto& a : {tribonacci(), fibonacci()}) {
    auto ai = *a.inverse();
    for (int trial = 0; trial < 200; ++trial) {
      Word w = gen::reduced_word(rng, a.rank(), static_cast<std::size_t>(gen::uniform(rng, 0, 30)));
      EXPECT_EQ(apply(ai, apply(a, w)), w);
      EXPECT_EQ(apply(a, apply(ai, w)), w);
    }
  }
}

TEST(BoundedCancellation, Examples) {
  EXPECT_EQ(bounded_cancellation(tribonacci()), 0u);
  EXPECT_EQ(bounded_cancellation(fibonacci()), 0u);
  EXPECT_EQ(bounded_cancellation(Automorphism::identity(3)), 0u);
  EXPECT_GE(bounded_cancellation(*tribonacci().inverse()), 1u);
}

TEST(BoundedCancellation, LengthDeficitBoundOnPositiveWords) {
  // Junctions of a positive word are pairs of basis letters, the pairs the
  // constant ranges over.
  gen::Rng rng(22);
  for (const auto& a : {tribonacci(), *tribonacci().inverse(), fibonacci(), *fibonacci().inverse()}) {
    const std::size_t bc = bounded_cancellation(a);
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<Letter> letters;
      int len = gen::uniform(rng, 1, 20);
      for (int i = 0; i < len; ++i) letters.push_back(Letter(gen::uniform(rng, 1, a.rank()), 1));
      Word w = Word::from_reduced(a.rank(), letters);
      std::size_t total = 0;
      for (Letter l : w.letters()) total += a.image(l).size();
      std::size_t out = apply(a, w).size();
      ASSERT_LE(out, total);
      EXPECT_LE(total - out, (w.size() - 1) * bc * 2) << a.name() << " " << w.str();
    }
  }
}

TEST(CancellationBound, LengthDeficitBoundOnAllWords) {
  gen::Rng rng(24);
  for (const auto& a : {tribonacci(), *tribonacci().inverse(), fibonacci(), *fibonacci().inverse()}) {
    const std::size_t c = *cancellation_bound(a);
    for (int trial = 0; trial < 300; ++trial) {
      Word w = gen::reduced_word(rng, a.rank(), static_cast<std::size_t>(gen::uniform(rng, 1, 20)));
      std::size_t total = 0;
      for (Letter l : w.letters()) total += a.image(l).size();
      std::size_t out = apply(a, w).size();
      ASSERT_LE(out, total);
      EXPECT_LE(total - out, (w.size() - 1) * c * 2) << a.name() << " " << w.str();
    }
  }
}

TEST(CancellationBound, CertifiesEveryProduct) {
  gen::Rng rng(23);
  for (const auto& a : {tribonacci(), *tribonacci().inverse(), fibonacci(), *fibonacci().inverse()}) {
    const std::size_t c = *cancellation_bound(a);
    for (int trial = 0; trial < 400; ++trial) {
      Word u = gen::reduced_word(rng, a.rank(), static_cast<std::size_t>(gen::uniform(rng, 1, 12)));
      Word v = gen::reduced_word(rng, a.rank(), static_cast<std::size_t>(gen::uniform(rng, 1, 12)));
      if (u.back() == v.front().inverse()) continue;
      Word au = apply(a, u);
      Word av = apply(a, v);
      std::size_t k = 0;
      while (k < au.size() && k < av.size() && au[au.size() - 1 - k] == av[k].inverse()) ++k;
      EXPECT_LE(k, c) << u.str() << " " << v.str();
    }
  }
  EXPECT_FALSE(cancellation_bound(Automorphism(2, {W(2, "ab"), W(2, "a")})).has_value());
}
