#include <gtest/gtest.h>

#include <filesystem>
#include <string>

#include "gcurrents/random.hpp"
#include "gcurrents/text_io.hpp"
#include "printers.hpp"

using namespace gcurrents;
using namespace gcurrents::io;

namespace {

const std::filesystem::path kData = GCURRENTS_DATA_DIR;

Word W(int rank, const std::string& s) { return Word::parse(rank, s); }

}  // namespace

TEST(AutomorphismText, BundledTribonacci) {
  auto p = load_automorphism(kData / "tribonacci.af");
  const auto& a = p.automorphism;
  EXPECT_TRUE(p.warnings.empty());
  EXPECT_EQ(a.rank(), 3);
  EXPECT_EQ(a.name(), "tribonacci");
  EXPECT_EQ(a.image(Letter(1, 1)), W(3, "ab"));
  EXPECT_EQ(a.image(Letter(3, 1)), W(3, "a"));
  EXPECT_EQ(apply(a, W(3, "c")), W(3, "a"));
  ASSERT_TRUE(a.inverse_images().has_value());
  EXPECT_TRUE(a.inverse().has_value());

  auto inv = load_automorphism(kData / "tribonacci_inverse.af").automorphism;
  EXPECT_EQ(inv.image(Letter(2, 1)), W(3, "Ca"));
  EXPECT_EQ(apply(inv, apply(a, W(3, "abcAbC"))), W(3, "abcAbC"));

  auto fib = load_automorphism(kData / "fibonacci.af").automorphism;
  EXPECT_EQ(fib.rank(), 2);
  EXPECT_EQ(fib.image(Letter(1, 1)), W(2, "ab"));
}

TEST(AutomorphismText, RoundTrip) {
  auto a = load_automorphism(kData / "tribonacci.af").automorphism;
  auto b = parse_automorphism(dump_automorphism(a)).automorphism;
  EXPECT_EQ(b.images(), a.images());
  EXPECT_EQ(b.inverse_images(), a.inverse_images());
  EXPECT_EQ(b.name(), a.name());
  auto c = automorphism_from_json(automorphism_json(a));
  EXPECT_EQ(c.images(), a.images());
  EXPECT_EQ(c.inverse_images(), a.inverse_images());
}

TEST(AutomorphismText, ReducesImagesWithWarning) {
  auto p = parse_automorphism("rank: 2\na -> abB\nb -> b\n");
  EXPECT_EQ(p.automorphism.image(Letter(1, 1)), W(2, "a"));
  ASSERT_EQ(p.warnings.size(), 1u);
  EXPECT_NE(p.warnings[0].find("reduced"), std::string::npos);
}

TEST(AutomorphismText, Errors) {
  EXPECT_THROW(parse_automorphism("a -> b\n"), ParseError);
  EXPECT_THROW(parse_automorphism("rank: 2\na -> b\n"), ParseError);
  EXPECT_THROW(parse_automorphism("rank: 2\na -> b\nb -> a\nc -> a\n"), ParseError);
  EXPECT_THROW(parse_automorphism("rank: 2\na -> b\na -> a\nb -> a\n"), ParseError);
  EXPECT_THROW(parse_automorphism("rank: 2\na -> z\nb -> a\n"), ParseError);
  EXPECT_THROW(parse_automorphism("rank: x\n"), ParseError);
  EXPECT_THROW(parse_automorphism("rank: 2\ncolour: red\na -> b\nb -> a\n"), ParseError);
  EXPECT_THROW(load_automorphism(kData / "missing.af"), ParseError);
}

TEST(LeafText, BundledLeaves) {
  auto z = load_leaf(kData / "aaab.leaf");
  ASSERT_TRUE(std::holds_alternative<EventuallyPeriodicLeaf>(z));
  EXPECT_EQ(language_of_leaf(z, 2),
            language_of_leaf(EventuallyPeriodicLeaf{W(2, "a"), W(2, "b"), W(2, "a")}, 2));
  auto p = load_leaf(kData / "periodic_ab.leaf");
  EXPECT_EQ(language_of_leaf(p, 3), support(rational_current(W(2, "ab"), 3)));
  auto t = load_leaf(kData / "tribonacci_fixed.leaf");
  ASSERT_TRUE(std::holds_alternative<SubstitutionLeaf>(t));
  EXPECT_TRUE(language_of_leaf(t, 2).contains(W(3, "ca")));
  EXPECT_FALSE(language_of_leaf(t, 2).contains(W(3, "cc")));
}

TEST(LeafText, Errors) {
  EXPECT_THROW(parse_leaf("period: ab\n"), ParseError);
  EXPECT_THROW(parse_leaf("rank: 2\nleft: a\n"), ParseError);
  EXPECT_THROW(parse_leaf("rank: 2\nperiod: abA\n"), InvariantError);
  EXPECT_THROW(parse_leaf("rank 2\n"), ParseError);
}

TEST(CurrentText, DumpFormat) {
  auto mu = rational_current(W(2, "ab"), 2);
  EXPECT_EQ(dump_current(mu), "rank=2\ndepth=2\na\t1/1\nA\t1/1\nb\t1/1\nB\t1/1\nab\t1/1\nAB\t1/1\nba\t1/1\nBA\t1/1\n");
  auto z = counting_current(W(2, "aab"), 1);
  EXPECT_NE(dump_current(z).find("tolerance=1/3"), std::string::npos);
}

TEST(CurrentText, RoundTripsRandomCurrents) {
  gen::Rng rng(81);
  for (int trial = 0; trial < 100; ++trial) {
    const int rank = gen::uniform(rng, 1, 3);
    const int depth = gen::uniform(rng, 1, 4);
    auto mu = gen::rational_combination(rng, rank, depth);
    EXPECT_EQ(parse_current(dump_current(mu)), mu);
    EXPECT_EQ(current_from_json(current_json(mu)), mu);
    EXPECT_EQ(current_from_json(Json::parse(current_json(mu).dump())), mu);
  }
  auto z = counting_current(W(3, "abcab"), 2);
  auto back = parse_current(dump_current(z));
  EXPECT_EQ(back, z);
  EXPECT_EQ(back.tolerance(), z.tolerance());
}

TEST(CurrentText, RejectsInvalid) {
  EXPECT_THROW(parse_current("depth=1\na\t1\nA\t1\n"), ParseError);
  EXPECT_THROW(parse_current("rank=2\ndepth=1\na\t1\nA\t1\na\t2\n"), ParseError);
  EXPECT_THROW(parse_current("rank=2\ndepth=1\na\tx\nA\t1\n"), ParseError);
  EXPECT_THROW(parse_current("rank=2\ndepth=1\na\t1\n"), InvariantError);
  EXPECT_THROW(parse_current("rank=2\ndepth=2\naA\t1\n"), ParseError);
}

TEST(LanguageText, RoundTrip) {
  gen::Rng rng(82);
  for (int trial = 0; trial < 50; ++trial) {
    auto l = gen::laminary_language(rng, gen::uniform(rng, 2, 3), gen::uniform(rng, 1, 4));
    EXPECT_EQ(parse_language(dump_language(l)), l);
    EXPECT_EQ(language_from_json(language_json(l)), l);
  }
  EXPECT_THROW(parse_language("rank=2\ndepth=1\na\n"), InvariantError);
}

TEST(GeneralPushText, RoundTrip) {
  Automorphism inv = *load_automorphism(kData / "tribonacci.af").automorphism.inverse();
  auto r = push_general(inv, rational_current(W(3, "abC"), 3), 2, {3, std::nullopt});
  auto back = parse_general_push(dump_general_push(r));
  EXPECT_EQ(back.rank, r.rank);
  EXPECT_EQ(back.depth, r.depth);
  EXPECT_EQ(back.undecided_cylinder_mass, r.undecided_cylinder_mass);
  EXPECT_EQ(back.undecided_bound, r.undecided_bound);
  EXPECT_EQ(back.values.size(), r.values.size());
  for (const auto& [w, cv] : r.values) {
    EXPECT_EQ(back.at(w).lower, cv.lower);
    EXPECT_EQ(back.at(w).undecided_mass, cv.undecided_mass);
  }
  auto j = general_push_from_json(general_push_json(r));
  EXPECT_EQ(j.undecided_cylinder_mass, r.undecided_cylinder_mass);
  EXPECT_EQ(j.steps, r.steps);
  EXPECT_EQ(j.values.size(), r.values.size());
}
