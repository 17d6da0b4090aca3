#include <gtest/gtest.h>

#include <algorithm>

#include "nicrob/oracle.hpp"

using namespace nicrob;

TEST(BruteForce, SmallRanges) {
  const auto config = PrimeClassConfig::mod4();
  EXPECT_TRUE(brute_force_exceptions(0, config).empty());
  EXPECT_EQ(brute_force_exceptions(1, config), (std::vector<std::uint64_t>{1}));
  const auto upto20 = brute_force_exceptions(20, config);
  for (std::uint64_t v : {1, 2, 4, 5, 8, 9, 10, 16, 18, 20}) {
    EXPECT_NE(std::find(upto20.begin(), upto20.end(), v), upto20.end()) << v;
  }
  for (auto v : upto20) {
    const auto n = factorize(v);
    EXPECT_TRUE(in_S(n, config));
    EXPECT_TRUE(nicolas_verdict(n).above_or_equal()) << v;
  }
}

TEST(BruteForce, ContainsTheSliceBelowAHundredThousand) {
  const auto found = brute_force_exceptions(100000, PrimeClassConfig::mod4());
  std::size_t hits = 0;
  for (std::uint64_t v : {4410,  8820,  10890, 13230, 17640, 21780, 22050, 26460, 30870, 35280, 39690,
                          44100, 52920, 61740, 66150, 70560, 79380, 88200, 92610, 105840, 110250}) {
    hits += std::binary_search(found.begin(), found.end(), v);
  }
  EXPECT_EQ(hits, 19u);
  EXPECT_TRUE(std::is_sorted(found.begin(), found.end()));
}

TEST(BruteForce, ResourceLimits) {
  BruteForceOptions tight;
  tight.memory_budget = 1000;
  EXPECT_THROW(brute_force_exceptions(100000, PrimeClassConfig::mod4(), tight), ResourceError);
  EXPECT_THROW(brute_force_exceptions(std::uint64_t{1} << 33, PrimeClassConfig::mod4()), ResourceError);
}

TEST(CrossValidate, EmptyRangeAgrees) {
  const RangeReport r = cross_validate(0, PrimeClassConfig::mod4());
  EXPECT_TRUE(r.agreement);
  EXPECT_TRUE(r.brute.empty());
}

TEST(CrossValidate, BothConfigsAgreeToAMillion) {
  for (const auto& config : {PrimeClassConfig::mod4(), PrimeClassConfig::a2plus3b2()}) {
    const RangeReport r = cross_validate(1'000'000, config);
    EXPECT_TRUE(r.agreement) << config.name;
    EXPECT_TRUE(r.only_brute.empty());
    EXPECT_TRUE(r.only_enumerated.empty());
    EXPECT_FALSE(r.brute.empty());
  }
}

TEST(CrossValidate, DetectsATamperedList) {
  ExceptionSet set = enumerate_exceptions(PrimeClassConfig::mod4());
  set.records.erase(set.records.begin() + 5);
  const RangeReport r = cross_validate(100000, set);
  EXPECT_FALSE(r.agreement);
  EXPECT_EQ(r.only_brute.size(), 1u);
}

TEST(Theta, SamplesPass) {
  const auto samples = verify_theta_bounds(45000, 100000, 5000, PrimeClassConfig::mod4());
  ASSERT_EQ(samples.size(), 12u);
  for (const auto& s : samples) EXPECT_TRUE(s.pass()) << s.x;
  EXPECT_EQ(samples[1].x, 50000u);
  EXPECT_THROW(verify_theta_bounds(1000, 2000, 10, PrimeClassConfig::mod4()), std::invalid_argument);
}

TEST(Mertens, HandExamples) {
  const auto samples = verify_mertens_bound(100, 100);
  ASSERT_EQ(samples.size(), 3u);  // 2, 3, 100
  EXPECT_EQ(samples[1].x, 3u);
  EXPECT_TRUE(samples[1].product.contains(3.0));
  EXPECT_NEAR(samples[1].bound.mid_double(), 3.5779100257296446, 1e-12);
  EXPECT_EQ(samples[2].x, 100u);
  EXPECT_NEAR(samples[2].product.mid_double(), 8.3113573789157, 1e-12);
  EXPECT_NEAR(samples[2].bound.mid_double(), 8.588896559915792, 1e-12);
  for (const auto& s : samples) EXPECT_TRUE(s.pass) << s.x;
}

TEST(Witness, ExponentAndRatios) {
  EXPECT_EQ(witness_exponent(100), 8u);
  const WitnessReport w = limsup_witness(100);
  EXPECT_EQ(w.exponent, 8u);
  EXPECT_TRUE(w.ratio_phi.strictly_positive());
  EXPECT_LT(w.ratio_phi.hi_double(), 1.5 * 1.7810724179901979);
  EXPECT_TRUE(w.ratio_phi.certainly_greater(w.ratio_sigma));
  EXPECT_THROW(limsup_witness(2), std::invalid_argument);
}

TEST(Witness, DistanceShrinksAlongPowersOfTen) {
  const double d3 = limsup_witness(1000).distance_to_egamma();
  const double d4 = limsup_witness(10000).distance_to_egamma();
  const double d5 = limsup_witness(100000).distance_to_egamma();
  EXPECT_GT(d3, d4);
  EXPECT_GT(d4, d5);
}
