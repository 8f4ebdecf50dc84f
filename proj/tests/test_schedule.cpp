#include "oracles.hpp"
#include "zeck/zeck.hpp"

#include <gtest/gtest.h>

using namespace zeck;

TEST(Binomial, MatchesPascalRule) {
  for (unsigned n = 0; n <= 60; ++n)
    for (unsigned k = 0; k <= n + 1; ++k) ASSERT_EQ(binomial(n, k), oracle::pascal(n, k)) << n << " choose " << k;
}

TEST(Binomial, LargeValue) {
  EXPECT_EQ(binomial(100, 50).str(), "100891344545564193334812497256");
}

TEST(Schedule, ParsesEverySizeAndAllowedForm) {
  const BinSchedule s = parse_schedule("affine:1,1/zero-one/adj:0");
  EXPECT_EQ(s.bin_size(1), 2u);
  EXPECT_EQ(s.bin_size(5), 6u);
  EXPECT_EQ(s.allowed(3), AllowedSet({0, 1}));

  EXPECT_EQ(parse_schedule("pow:2/full/adj:0").bin_size(7), 49u);
  EXPECT_EQ(parse_schedule("pow:2/full-minus/adj:0").allowed(3), AllowedSet::range(0, 8));
  EXPECT_EQ(parse_schedule("list:1,2,3/full/adj:2").bin_size(3), 3u);
  EXPECT_EQ(parse_schedule("list:1,2,3/full/adj:2").adjacency(), 2u);
  EXPECT_EQ(parse_schedule("const:3/pair:2/adj:0").allowed(9), AllowedSet({0, 2}));
  EXPECT_EQ(parse_schedule("affine:1,0/floordiv:3/adj:0").allowed(7), AllowedSet({0, 1, 2}));
  EXPECT_EQ(parse_schedule("const:4/set:4,0,1,2/adj:0").allowed(1), AllowedSet({0, 1, 2, 4}));
}

TEST(Schedule, ParseErrorsCarryPosition) {
  auto position = [](const char* text) -> long {
    try {
      parse_schedule(text);
    } catch (const ParseError& e) {
      return static_cast<long>(e.position());
    }
    return -1;
  };
  EXPECT_EQ(position("cons:2/zero-one/adj:1"), 0);
  EXPECT_EQ(position("const:x/zero-one/adj:1"), 6);
  EXPECT_EQ(position("const:2/zero-two/adj:1"), 8);
  EXPECT_EQ(position("const:2/zero-one/adj:1x"), 22);
  EXPECT_EQ(position("const:2/zero-one"), 16);
  EXPECT_EQ(position("const:4/set:0,1,1/adj:0"), 8);
  EXPECT_EQ(position("affine:1,0/floordiv:0/adj:0"), 20);
}

TEST(Schedule, SemanticErrors) {
  EXPECT_THROW(parse_schedule("const:0/zero-one/adj:0"), SemanticError);
  EXPECT_THROW(parse_schedule("const:3/set:0,1,4/adj:0"), SemanticError);
  EXPECT_THROW(parse_schedule("list:2,1/pair:2/adj:0"), SemanticError);
  const BinSchedule shrinking = parse_schedule("affine:-1,3/zero-one/adj:0");
  EXPECT_EQ(shrinking.bin_size(2), 1u);
  EXPECT_THROW(shrinking.bin_size(3), SemanticError);
  EXPECT_THROW(parse_schedule("list:1,2/full/adj:0").bin_size(3), PreconditionError);
}

TEST(Schedule, RenderRoundTrip) {
  const std::vector<std::string> sizes{"const:1", "const:7", "affine:1,1", "affine:2,-1", "pow:2", "list:3,1,4"};
  const std::vector<std::string> allowed{"zero-one", "full", "full-minus", "set:0,1", "pair:1", "floordiv:2"};
  for (const auto& sz : sizes)
    for (const auto& al : allowed)
      for (const char* adj : {"0", "1", "5"}) {
        const std::string text = sz + "/" + al + "/adj:" + adj;
        const BinSchedule s = parse_schedule(text);
        EXPECT_EQ(render(s), text);
        EXPECT_EQ(parse_schedule(render(s)), s);
      }
  EXPECT_EQ(render(parse_schedule("const:4/set:4,2,0,1/adj:0")), "const:4/set:0,1,2,4/adj:0");
}

TEST(Sequence, RejectsMalformedBins) {
  const BinSchedule s = parse_schedule("const:2/zero-one/adj:0");
  EXPECT_THROW(Sequence(s, {{1, 2}, {3}}), PreconditionError);
  EXPECT_THROW(Sequence(s, {{1, 2}, {2, 3}}), PreconditionError);
  EXPECT_NO_THROW(Sequence(s, {{1, 2}, {2, 3}}, SequenceMode::Gnary));
  EXPECT_THROW(Sequence(s, {{0, 2}}), PreconditionError);
  EXPECT_THROW(Sequence(s, {{2, 1}}, SequenceMode::Gnary), PreconditionError);
}

TEST(Sequence, LegalityViolations) {
  const Sequence seq = build_sequence(parse_schedule("const:2/zero-one/adj:1"), 4);
  Decomposition ok{{{1, {0}}, {3, {1}}}, 1 + 8};
  EXPECT_EQ(legality_violation(seq, ok), "");
  Decomposition adjacent{{{1, {0}}, {2, {1}}}, 1 + 4};
  EXPECT_NE(legality_violation(seq, adjacent), "");
  Decomposition two_in_bin{{{2, {0, 1}}}, 7};
  EXPECT_NE(legality_violation(seq, two_in_bin), "");
  Decomposition wrong_value{{{2, {0}}}, 4};
  EXPECT_NE(legality_violation(seq, wrong_value), "");
}
