#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "lmsv/stats.hpp"
#include "oracles.hpp"

using namespace lmsv;

namespace {

std::vector<double> random_series(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::student_t_distribution<double> t(3.0);
  std::vector<double> x(n);
  for (double& v : x) v = t(gen);
  return x;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(Cusum, MatchesOracle) {
  for (std::size_t n : {2u, 16u, 64u, 128u}) {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto x = random_series(n, s);
      const Profile p = cusum(x);
      const auto o = oracle::cusum_profile(x);
      for (std::size_t k = 0; k < n; ++k) ASSERT_LE(rel(p.values[k], o[k]), 1e-12);
      EXPECT_LE(rel(p.sup, oracle::sup(o)), 1e-12);
    }
  }
}

TEST(Cusum, LastValueVanishesAndTransformsApply) {
  const std::vector<double> x{1.0, -2.0, 3.0, 0.5};
  EXPECT_NEAR(cusum(x).values.back(), 0.0, 1e-15);
  std::vector<double> sq;
  for (double v : x) sq.push_back(v * v);
  EXPECT_EQ(cusum(x, Transform::Square).values, cusum(sq).values);
  EXPECT_THROW(cusum(std::vector<double>{1.0}), std::invalid_argument);
  EXPECT_THROW(cusum(std::vector<double>{1.0, 0.0}, Transform::LogAbs), std::domain_error);
}

TEST(Wilcoxon, MatchesOracleTieFree) {
  for (std::size_t n : {2u, 16u, 64u, 128u}) {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto x = random_series(n, 100 + s);
      const auto o = oracle::wilcoxon_profile(x);
      const Profile p = wilcoxon(x);
      for (std::size_t k = 0; k < n; ++k) ASSERT_EQ(p.values[k], o[k]);
    }
  }
}

TEST(Wilcoxon, TiesUseDoubleSum) {
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<int> d(0, 4);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> x(30);
    for (double& v : x) v = d(gen);
    ASSERT_TRUE(has_ties(x));
    const auto o = oracle::wilcoxon_profile(x);
    const Profile p = wilcoxon(x);
    for (std::size_t k = 0; k < x.size(); ++k) ASSERT_EQ(p.values[k], o[k]);
  }
}

TEST(Wilcoxon, RankIdentityEveryLengthUpTo64) {
  // Σ_{i≤k} R_i − k(n+1)/2 = Σ_{i≤k}Σ_{j>k}(1{x_i ≤ x_j} − ½) for tie-free data.
  for (std::size_t n = 2; n <= 64; ++n) {
    for (std::uint64_t s = 0; s < 5; ++s) {
      const auto x = random_series(n, 1000 * n + s);
      const auto r = oracle::ranks(x);
      const auto o = oracle::wilcoxon_profile(x);
      double acc = 0.0;
      for (std::size_t k = 1; k <= n; ++k) {
        acc += r[k - 1];
        ASSERT_EQ(std::abs(acc - k * (n + 1.0) / 2.0), o[k - 1]) << "n=" << n << " k=" << k;
      }
    }
  }
}

TEST(Ranks, TiesGetLargestRank) {
  EXPECT_EQ(ranks(std::vector<double>{3.0, 1.0, 3.0, 2.0}), (std::vector<double>{4, 1, 4, 2}));
  const auto x = random_series(40, 9);
  EXPECT_EQ(ranks(x), oracle::ranks(x));
}

TEST(Profile, ArgmaxIsSmallestMaximizer) {
  // Profile values 1, 0, 1, 0: the first maximizer wins.
  const Profile p = cusum(std::vector<double>{1.0, -1.0, 1.0, -1.0});
  EXPECT_EQ(p.argmax_k, 1u);
  EXPECT_DOUBLE_EQ(p.sup, 1.0);
}

TEST(SelfNormalized, MatchesOracle) {
  const TrimSpec trim;
  for (std::size_t n : {16u, 64u, 128u}) {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto x = random_series(n, 500 + s);
      EXPECT_LE(rel(sn_cusum(x, Transform::Identity, trim).statistic,
                    oracle::sn_statistic(x, 0.15, 0.85)),
                1e-10);
      EXPECT_LE(rel(sn_wilcoxon(x, Transform::Identity, trim).statistic,
                    oracle::sn_statistic(oracle::ranks(x), 0.15, 0.85)),
                1e-10);
    }
  }
}

TEST(SelfNormalized, AffineInvariance) {
  const auto x = random_series(200, 77);
  const double base = sn_cusum(x).statistic;
  for (auto [a, b] : {std::pair{2.0, 0.0}, {-3.5, 10.0}, {1e-3, -5.0}, {1e4, 1e4}}) {
    std::vector<double> y;
    for (double v : x) y.push_back(a * v + b);
    EXPECT_NEAR(sn_cusum(y).statistic, base, 1e-9 * base);
  }
}

TEST(SelfNormalized, WilcoxonMonotoneInvariance) {
  const auto x = random_series(150, 78);
  const TestOutcome base = sn_wilcoxon(x);
  std::vector<double> e, c;
  for (double v : x) {
    e.push_back(std::exp(v));
    c.push_back(v * v * v + 2.0 * v);
  }
  EXPECT_EQ(sn_wilcoxon(e).statistic, base.statistic);
  EXPECT_EQ(sn_wilcoxon(c).statistic, base.statistic);
  EXPECT_EQ(wilcoxon(e).values, wilcoxon(x).values);
}

TEST(SelfNormalized, ConstantSeriesIsDegenerate) {
  const std::vector<double> x(50, 3.0);
  const TestOutcome o = sn_cusum(x);
  EXPECT_TRUE(o.degenerate);
  EXPECT_TRUE(std::isinf(o.statistic));
  TestOutcome d = o;
  EXPECT_TRUE(d.decide(5.0).reject);
}

TEST(SelfNormalized, TrimmingBounds) {
  const auto x = random_series(100, 3);
  const TestOutcome o = sn_cusum(x, Transform::Identity, TrimSpec{0.2, 0.3});
  EXPECT_GE(o.argmax_k, 20u);
  EXPECT_LE(o.argmax_k, 30u);
  EXPECT_THROW(sn_cusum(x, Transform::Identity, TrimSpec{0.5, 0.4}), std::invalid_argument);
  EXPECT_THROW(sn_cusum(std::vector<double>{1, 2, 3}, Transform::Identity, TrimSpec{0.1, 0.2}),
               std::invalid_argument);
  EXPECT_EQ((TrimSpec{0.15, 0.85}.first(500)), 75u);
  EXPECT_EQ((TrimSpec{0.15, 0.999}.last(100)), 99u);
}

TEST(Outcome, NormalizedDecision) {
  const Profile p = cusum(random_series(64, 4));
  TestOutcome o = normalized_outcome(Family::Cusum, p, 2.0);
  EXPECT_DOUBLE_EQ(o.statistic, p.sup / 2.0);
  EXPECT_FALSE(o.decide(o.statistic).reject);
  EXPECT_TRUE(o.decide(o.statistic * 0.999).reject);
  EXPECT_THROW(normalized_outcome(Family::Cusum, p, 0.0), std::invalid_argument);
}

TEST(Names, RoundTrip) {
  for (Family f : {Family::Cusum, Family::Wilcoxon, Family::SnCusum, Family::SnWilcoxon})
    EXPECT_EQ(parse_family(to_string(f)), f);
  EXPECT_EQ(parse_family("SN-CUSUM"), Family::SnCusum);
  EXPECT_EQ(parse_transform("log-abs"), Transform::LogAbs);
  EXPECT_THROW(parse_family("ks"), std::invalid_argument);
}

TEST(ProfileCsv, Layout) {
  std::ostringstream os;
  write_profile_csv(os, cusum(std::vector<double>{1.0, -1.0}));
  EXPECT_EQ(os.str(), "k,value\n1,1\n2,0\n");
}
