#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "fbmgreeks/errors.hpp"
#include "fbmgreeks/grid.hpp"

using namespace fbmgreeks;

TEST(HurstParameter, RejectsValuesOutsideOpenUnitInterval) {
  EXPECT_THROW(HurstParameter(0.0), DomainError);
  EXPECT_THROW(HurstParameter(1.0), DomainError);
  EXPECT_THROW(HurstParameter(-0.2), DomainError);
  EXPECT_THROW(HurstParameter(std::nan("")), DomainError);
  EXPECT_NO_THROW(HurstParameter(0.01));
}

TEST(HurstParameter, YoungRegimeIsStrictlyAboveOneHalf) {
  EXPECT_FALSE(HurstParameter(0.5).young_regime());
  EXPECT_FALSE(HurstParameter(0.3).young_regime());
  EXPECT_TRUE(HurstParameter(0.5000001).young_regime());
  EXPECT_TRUE(HurstParameter(0.9).young_regime());
}

TEST(DyadicGrid, NodesAreUniformAndStrictlyIncreasing) {
  const DyadicGrid g(4, 2.0);
  EXPECT_EQ(g.steps(), 16u);
  EXPECT_EQ(g.nodes(), 17u);
  EXPECT_DOUBLE_EQ(g.step(), 0.125);
  const auto t = g.times();
  ASSERT_EQ(t.size(), 17u);
  EXPECT_EQ(t.front(), 0.0);
  EXPECT_EQ(t.back(), 2.0);
  for (std::size_t k = 1; k < t.size(); ++k) {
    EXPECT_GT(t[k], t[k - 1]);
    EXPECT_NEAR(t[k] - t[k - 1], g.step(), 1e-15);
  }
}

TEST(DyadicGrid, DefaultHorizonIsOne) {
  EXPECT_EQ(DyadicGrid(3).horizon(), 1.0);
  EXPECT_EQ(DyadicGrid(3).node(8), 1.0);
}

TEST(DyadicGrid, RejectsInvalidOrderAndHorizon) {
  EXPECT_THROW(DyadicGrid(0), DomainError);
  EXPECT_THROW(DyadicGrid(DyadicGrid::kMaxOrder + 1), DomainError);
  EXPECT_THROW(DyadicGrid(4, 0.0), DomainError);
  EXPECT_THROW(DyadicGrid(4, -1.0), DomainError);
  EXPECT_THROW(DyadicGrid(4, INFINITY), DomainError);
}

TEST(SeedRecord, Splitmix64MatchesReferenceOutput) {
  // First outputs of the reference SplitMix64 generator seeded with 0.
  EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(splitmix64(0x9E3779B97F4A7C15ULL), 0x6E789E6AA1B965F4ULL);
}

TEST(SeedRecord, StateIsPureFunctionOfMasterAndStream) {
  const SeedRecord a{42, 7}, b{42, 7};
  EXPECT_EQ(a.state(), b.state());
  EXPECT_EQ(a.engine()(), b.engine()());
  EXPECT_NE(a.state(), (SeedRecord{42, 8}).state());
  EXPECT_NE(a.state(), (SeedRecord{43, 7}).state());
}

TEST(SeedRecord, ChildStreamsAreDistinct) {
  const SeedRecord root{123, 0};
  std::set<std::uint64_t> states;
  for (std::uint64_t i = 0; i < 1000; ++i) states.insert(root.child(i).state());
  EXPECT_EQ(states.size(), 1000u);
  EXPECT_EQ(root.child(3), root.child(3));
}

TEST(BrownianIncrements, DeterministicWithStepVariance) {
  const DyadicGrid g(12, 2.0);
  const auto a = brownian_increments(g, {5, 1});
  EXPECT_EQ(a, brownian_increments(g, {5, 1}));
  ASSERT_EQ(a.size(), g.steps());
  const double mean = std::accumulate(a.begin(), a.end(), 0.0) / a.size();
  double var = 0.0;
  for (double x : a) var += (x - mean) * (x - mean);
  var /= a.size() - 1;
  // sample variance of 4096 normals has relative s.e. sqrt(2/4096) ~ 2.2%
  EXPECT_NEAR(var / g.step(), 1.0, 0.09);
}
