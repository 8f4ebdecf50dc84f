#include "oracles.hpp"
#include "zeck/zeck.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

using namespace zeck;

TEST(Moments, ZeroOneClosedForm) {
  for (unsigned b = 1; b <= 50; ++b) {
    const MomentTriple m = bin_moments(b, AllowedSet({0, 1}), 1);
    EXPECT_EQ(m.mu, Rational(b, b + 1)) << b;
    EXPECT_EQ(m.sigma2, Rational(b, (b + 1) * (b + 1))) << b;
  }
}

TEST(Moments, MatchDirectExpectation) {
  for (unsigned b = 1; b <= 8; ++b)
    for (unsigned mask = 1; mask < (1u << (b + 1)); ++mask) {
      std::vector<std::uint64_t> counts;
      for (unsigned c = 0; c <= b; ++c)
        if (mask >> c & 1u) counts.push_back(c);
      const AllowedSet a(counts);
      const auto direct = oracle::subset_moments(b, std::set<std::uint64_t>(counts.begin(), counts.end()));
      const MomentTriple m = bin_moments(b, a, 2);
      ASSERT_EQ(m.mu, direct.mu);
      ASSERT_EQ(m.sigma2, direct.sigma2);
      ASSERT_EQ(m.rho, direct.abs4);
    }
}

TEST(Moments, FullRangeVarianceIsQuarterN) {
  for (unsigned n = 1; n <= 40; ++n) EXPECT_EQ(bin_moments(n, AllowedSet::range(0, n), 2).sigma2, Rational(n, 4));
}

TEST(Moments, ZeroOneAbsoluteMomentBound) {
  for (unsigned b = 1; b <= 60; ++b)
    for (unsigned delta = 1; delta <= 6; ++delta)
      EXPECT_LT(bin_moments(b, AllowedSet({0, 1}), delta).rho, Rational(b, (b + 1) * (b + 1))) << b << "," << delta;
}

TEST(Moments, BinPmfSumsToOne) {
  const BinPMF p = bin_pmf(5, AllowedSet({0, 2, 5}));
  Rational total = 0;
  for (const auto& q : p.probs) total += q;
  EXPECT_EQ(total, 1);
  EXPECT_EQ(p.support, (std::vector<std::uint64_t>{0, 2, 5}));
  EXPECT_EQ(p.probs.at(1), Rational(10, 12));
}

TEST(Lyapunov, FibonacciLikeIsOneOverNSquared) {
  const LyapunovSeries s = lyapunov_series(parse_schedule("const:1/zero-one/adj:0"), 2, 100);
  for (const auto& row : s.rows) EXPECT_EQ(*row.squared_ratio, Rational(1, row.n * row.n));
  EXPECT_EQ(*s.rows.back().squared_ratio, Rational(1, 10000));
}

TEST(Lyapunov, BeforeNConvention) {
  const LyapunovSeries s = lyapunov_series(parse_schedule("const:1/zero-one/adj:0"), 2, 5, SumConvention::BeforeN);
  EXPECT_FALSE(s.rows[0].squared_ratio);
  EXPECT_EQ(*s.rows[4].squared_ratio, Rational(1, 16));
}

TEST(Lyapunov, FloorDivSchedulesDecrease) {
  for (const char* spec : {"affine:1,0/floordiv:2/adj:0", "affine:1,0/floordiv:3/adj:0"}) {
    const LyapunovSeries s = lyapunov_series(parse_schedule(spec), 2, 120);
    for (std::size_t i = 21; i < s.rows.size(); ++i)
      EXPECT_LT(*s.rows[i].squared_ratio, *s.rows[i - 1].squared_ratio) << spec << " N=" << i + 1;
  }
}

TEST(Lyapunov, RequiresNoAdjacency) {
  EXPECT_THROW(lyapunov_series(parse_schedule("const:1/zero-one/adj:1"), 2, 5), PreconditionError);
}

TEST(SummandDistribution, ModelSmallCase) {
  const SummandPMF m = model_summand_pmf(parse_schedule("const:2/zero-one/adj:0"), 3, true);
  EXPECT_EQ(m.prob(1), Rational(1, 9));
  EXPECT_EQ(m.prob(2), Rational(4, 9));
  EXPECT_EQ(m.prob(3), Rational(4, 9));
  const SummandPMF free = model_summand_pmf(parse_schedule("const:2/zero-one/adj:0"), 3, false);
  // Bins 1 and 2 only: (1 + 2x)^2 / 9.
  EXPECT_EQ(free.prob(0), Rational(1, 9));
  EXPECT_EQ(free.prob(2), Rational(4, 9));
}

TEST(SummandDistribution, ModelEqualsEmpiricalOnUniqueSchedules) {
  const std::vector<std::string> specs{"const:1/zero-one/adj:0", "const:2/zero-one/adj:0", "const:3/zero-one/adj:0",
                                       "const:2/full/adj:0",     "const:3/full-minus/adj:0", "affine:1,0/zero-one/adj:0",
                                       "list:1,2,3,2,1,2/full/adj:0", "list:2,3,3,2,4,2/full-minus/adj:0"};
  for (const auto& spec : specs) {
    const BinSchedule schedule = parse_schedule(spec);
    for (BinIndex n = 1; n <= 6; ++n) {
      if (schedule.allowed(n).max() == 0) continue;
      const Sequence seq = build_sequence(schedule, n);
      const SummandPMF model = model_summand_pmf(schedule, n, true);
      const SummandPMF empirical = empirical_summand_pmf(seq, n);
      EXPECT_EQ(model.probs(), empirical.probs()) << spec << " N=" << n;
    }
  }
}

TEST(SummandDistribution, EmpiricalCountsSmallCase) {
  const Sequence seq = build_sequence(parse_schedule("const:2/zero-one/adj:0"), 3);
  const SummandPMF e = empirical_summand_pmf(seq, 3);
  EXPECT_EQ(e.weights, (std::vector<StatInt>{0, 2, 8, 8}));
  // With a fourth bin present the integers claimed by bin 4 are excluded.
  const Sequence longer = build_sequence(parse_schedule("const:2/zero-one/adj:0"), 4);
  EXPECT_EQ(empirical_summand_pmf(longer, 3).weights, e.weights);
}

namespace {
using Float50 = boost::multiprecision::cpp_bin_float_50;

// KS distance computed with 50-digit arithmetic throughout.
Float50 ks_oracle(const SummandPMF& pmf) {
  Float50 mean = 0, second = 0;
  const Float50 total(pmf.total.str());
  for (std::size_t i = 0; i < pmf.weights.size(); ++i) {
    const Float50 p = Float50(pmf.weights[i].str()) / total;
    mean += p * i;
    second += p * i * i;
  }
  const Float50 sd = sqrt(second - mean * mean);
  Float50 cumulative = 0, best = 0;
  for (std::size_t i = 0; i < pmf.weights.size(); ++i) {
    if (pmf.weights[i] == 0) continue;
    const Float50 phi = erfc(-(Float50(i) - mean) / sd / sqrt(Float50(2))) / 2;
    best = std::max(best, abs(cumulative - phi));
    cumulative += Float50(pmf.weights[i].str()) / total;
    best = std::max(best, abs(cumulative - phi));
  }
  return best;
}
}  // namespace

TEST(Gaussian, KsMatchesHighPrecisionOracle) {
  for (BinIndex n : {3u, 11u, 30u, 101u}) {
    const SummandPMF pmf = model_summand_pmf(parse_schedule("const:1/zero-one/adj:0"), n, true);
    EXPECT_NEAR(gaussian_distance(pmf).ks_distance, ks_oracle(pmf).convert_to<double>(), 1e-12) << n;
  }
  const SummandPMF full = model_summand_pmf(parse_schedule("affine:1,0/full/adj:0"), 8, false);
  EXPECT_NEAR(gaussian_distance(full).ks_distance, ks_oracle(full).convert_to<double>(), 1e-12);
}

TEST(Gaussian, GoldenValueAtEleven) {
  // 1 + Binomial(10, 1/2): the largest gap is just below the mean, 1/2 - 386/1024.
  const SummandPMF pmf = model_summand_pmf(parse_schedule("const:1/zero-one/adj:0"), 11, true);
  EXPECT_DOUBLE_EQ(gaussian_distance(pmf).ks_distance, 0.123046875);
}

TEST(Gaussian, ZeroVarianceRejected) {
  const SummandPMF pmf = model_summand_pmf(parse_schedule("const:1/zero-one/adj:0"), 1, true);
  EXPECT_THROW(gaussian_distance(pmf), PreconditionError);
}

TEST(Theorem35, HandValuesAndPolynomial) {
  const Theorem35Report r = theorem35_check(30, 2);
  EXPECT_EQ(r.rho[0], Rational(1, 16));
  EXPECT_EQ(r.rho[1], Rational(1, 2));
  for (BinIndex n = 1; n <= 30; ++n) EXPECT_EQ(r.ratios[n - 1], Rational(3, 16) - Rational(1, 8 * n));
  EXPECT_TRUE(r.bounded);
  EXPECT_TRUE(r.sigma_matches);
  EXPECT_TRUE(r.rho_matches_general);
  EXPECT_EQ(r.ratio_limit, Rational(3, 16));
  EXPECT_EQ(r.argmax, 30u);
}

TEST(Theorem35, HigherEvenDelta) {
  const Theorem35Report r = theorem35_check(25, 4);
  EXPECT_TRUE(r.bounded);
  EXPECT_THROW(theorem35_check(10, 3), PreconditionError);
}
