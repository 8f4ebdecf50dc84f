#include "oracles.hpp"
#include "zeck/zeck.hpp"

#include <gtest/gtest.h>

using namespace zeck;

TEST(Classify, Forms) {
  EXPECT_EQ(classify(parse_schedule("const:3/zero-one/adj:0"), 4).verdict, ClassifierVerdict::Unique);
  EXPECT_EQ(classify(parse_schedule("const:3/full/adj:0"), 4).verdict, ClassifierVerdict::Unique);
  EXPECT_EQ(classify(parse_schedule("const:3/full-minus/adj:0"), 4).verdict, ClassifierVerdict::Unique);
  EXPECT_EQ(classify(parse_schedule("const:3/full/adj:1"), 4).verdict, ClassifierVerdict::OutOfTheoremScope);
}

TEST(Classify, CaseI) {
  const Classification c = classify(parse_schedule("const:4/set:0,1,2,4/adj:0"), 4);
  EXPECT_EQ(c.verdict, ClassifierVerdict::NotUnique);
  ASSERT_EQ(c.per_bin.size(), 1u);
  EXPECT_EQ(c.per_bin[0].violation, ViolationCase::CaseI);
  EXPECT_EQ(c.per_bin[0].k, 2u);
}

TEST(Classify, CaseIISubcases) {
  auto subcase = [](const char* spec) { return classify(parse_schedule(spec), 1).per_bin.at(0).subcase; };
  EXPECT_EQ(subcase("const:3/set:0,1,3/adj:0"), CaseIISubcase::BinEqualsK);
  EXPECT_EQ(subcase("const:4/set:0,1,3/adj:0"), CaseIISubcase::BinEqualsKPlusOne);
  EXPECT_EQ(subcase("const:5/set:0,1,3/adj:0"), CaseIISubcase::BinAtLeastKPlusTwo);
  EXPECT_EQ(classify(parse_schedule("const:5/set:0,1,3/adj:0"), 1).per_bin.at(0).k, 3u);
}

TEST(Classify, StopsAtFirstViolatingBin) {
  const Classification c = classify(parse_schedule("list:2,3,4/set:0,1,2/adj:0"), 3);
  EXPECT_EQ(c.verdict, ClassifierVerdict::NotUnique);
  EXPECT_EQ(c.per_bin.back().bin, 3u);
  EXPECT_EQ(c.per_bin[0].form, AllowedForm::Full);
  EXPECT_EQ(c.per_bin[1].form, AllowedForm::FullMinusOne);
}

TEST(Verify, CollisionAndGap) {
  const Sequence seq = build_sequence(parse_schedule("const:4/set:0,1,2,4/adj:0"), 4);
  const ExhaustiveCheck check = verify_exhaustive(seq, 300);
  EXPECT_EQ(check.verdict, EmpiricalVerdict::Collision);
  ASSERT_TRUE(check.collision);
  EXPECT_EQ(check.collision->x, 11);

  const BinSchedule s = parse_schedule("const:2/zero-one/adj:0");
  const Sequence holes(s, {{1, 2}, {5, 6}});
  const ExhaustiveCheck gap = verify_exhaustive(holes, 8);
  EXPECT_EQ(gap.verdict, EmpiricalVerdict::CoverageGap);
  EXPECT_EQ(*gap.gap, 3);
  EXPECT_THROW(verify_exhaustive(holes, 9), PreconditionError);
}

TEST(Verify, ThreadedMatchesSequential) {
  for (const char* spec : {"const:4/set:0,1,2,4/adj:0", "const:5/set:0,1,3/adj:0", "const:3/full/adj:0"}) {
    const Sequence seq = build_sequence(parse_schedule(spec), 4);
    const BigInt bound = std::min(omega(seq, 4), BigInt(2000));
    const ExhaustiveCheck a = verify_exhaustive(seq, bound, 1);
    const ExhaustiveCheck b = verify_exhaustive(seq, bound, 4);
    EXPECT_EQ(a.verdict, b.verdict) << spec;
    EXPECT_EQ(a.collision.has_value(), b.collision.has_value());
    if (a.collision) EXPECT_EQ(a.collision->x, b.collision->x);
  }
}

// The classifier agrees with a bitmask enumeration of all selections on every
// constant schedule with b <= 4 and {0,1} inside A.
TEST(Classify, AgreesWithBruteForce) {
  for (unsigned b = 1; b <= 4; ++b) {
    for (unsigned mask = 0; mask < (1u << (b + 1)); ++mask) {
      if ((mask & 3u) != 3u) continue;
      std::string set;
      for (unsigned c = 0; c <= b; ++c)
        if (mask >> c & 1u) set += (set.empty() ? "" : ",") + std::to_string(c);
      const BinSchedule schedule = parse_schedule("const:" + std::to_string(b) + "/set:" + set + "/adj:0");
      const Sequence seq = build_sequence(schedule, 3);
      const auto counts = oracle::representation_counts(seq);
      bool unique = true;
      for (const auto& [v, c] : counts)
        if (v > 0 && v <= omega(seq, 3) && c != 1) unique = false;
      if (oracle::least_unrepresentable(counts, omega(seq, 3)) != 0) unique = false;
      const bool predicted = classify(schedule, 3).verdict == ClassifierVerdict::Unique;
      EXPECT_EQ(predicted, unique) << render(schedule);
    }
  }
}

TEST(Divisibility, GrowingBins) {
  const Sequence seq = build_sequence(parse_schedule("affine:1,1/zero-one/adj:0"), 6);
  const DivisibilityResult d = divisibility_check(seq, 3);
  EXPECT_EQ(d.k, 11);
  EXPECT_TRUE(d.all_divisible);
  const DivisibilityResult d2 = divisibility_check(seq, 2);
  EXPECT_EQ(d2.k, 2);
  EXPECT_TRUE(d2.all_divisible);
}

TEST(Divisibility, DetectsOffenderAndNonInterval) {
  const BinSchedule s = parse_schedule("const:2/zero-one/adj:0");
  const Sequence seq(s, {{1, 2}, {3, 7}});
  const DivisibilityResult d = divisibility_check(seq, 2);
  EXPECT_FALSE(d.all_divisible);
  EXPECT_EQ(*d.first_offender, 7);
  const Sequence holes(s, {{1, 3}, {6, 9}});
  EXPECT_THROW(divisibility_check(holes, 2), PreconditionError);
}
