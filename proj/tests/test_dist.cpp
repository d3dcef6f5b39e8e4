#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "lmsv/dist.hpp"

using namespace lmsv;

namespace {

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double variance(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

}  // namespace

TEST(RngStream, SameKeySameDraws) {
  const RngStream a{42, 7}, b{42, 7};
  for (std::uint64_t i = 0; i < 100; ++i) {
    EXPECT_EQ(a.bits(i), b.bits(i));
    EXPECT_EQ(a.normal(i), b.normal(i));
  }
}

TEST(RngStream, DifferentKeysDiffer) {
  const RngStream a{42, 7};
  const RngStream b{43, 7};
  const RngStream c{42, 8};
  int same_b = 0, same_c = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    same_b += a.bits(i) == b.bits(i);
    same_c += a.bits(i) == c.bits(i);
  }
  EXPECT_EQ(same_b, 0);
  EXPECT_EQ(same_c, 0);
}

TEST(RngStream, ChildrenAreDistinctAndStable) {
  const RngStream root{5, 0};
  std::set<std::uint64_t> ids;
  for (std::uint64_t k = 0; k < 1000; ++k) ids.insert(root.child(k).stream_id);
  EXPECT_EQ(ids.size(), 1000u);
  EXPECT_EQ(root.child(3), root.child(3));
  EXPECT_NE(root.child(3).child(1), root.child(1).child(3));
}

TEST(RngStream, UniformIsOpenAndCentered) {
  const RngStream s{1, 2};
  std::vector<double> u(200000);
  s.fill_uniform(u);
  for (double v : u) {
    ASSERT_GT(v, 0.0);
    ASSERT_LT(v, 1.0);
  }
  EXPECT_NEAR(mean(u), 0.5, 4.0 * std::sqrt(1.0 / 12.0 / u.size()));
  EXPECT_NEAR(variance(u), 1.0 / 12.0, 0.002);
}

TEST(RngStream, FillMatchesPointwiseForAnyOffset) {
  const RngStream s{9, 3};
  for (std::uint64_t offset : {0u, 1u, 2u, 7u}) {
    for (std::size_t len : {1u, 2u, 5u, 6u}) {
      std::vector<double> z(len), u(len);
      s.fill_normal(z, offset);
      s.fill_uniform(u, offset);
      for (std::size_t i = 0; i < len; ++i) {
        EXPECT_EQ(z[i], s.normal(offset + i));
        EXPECT_EQ(u[i], s.uniform(offset + i));
      }
    }
  }
}

TEST(RngStream, NormalMoments) {
  const RngStream s{11, 0};
  std::vector<double> z(200000);
  s.fill_normal(z);
  const double se = 1.0 / std::sqrt(static_cast<double>(z.size()));
  EXPECT_NEAR(mean(z), 0.0, 4.0 * se);
  EXPECT_NEAR(variance(z), 1.0, 4.0 * std::sqrt(2.0) * se);
  // Tail mass beyond 1.96.
  const auto beyond = std::count_if(z.begin(), z.end(), [](double v) { return std::abs(v) > 1.959964; });
  const double p = static_cast<double>(beyond) / z.size();
  EXPECT_NEAR(p, 0.05, 4.0 * std::sqrt(0.05 * 0.95 / z.size()));
}

TEST(NoiseSpec, Preconditions) {
  EXPECT_THROW(NoiseSpec::centered_pareto(1.0), std::invalid_argument);
  EXPECT_THROW(NoiseSpec::centered_pareto(0.9), std::invalid_argument);
  EXPECT_THROW(NoiseSpec::pareto(0.0), std::invalid_argument);
  EXPECT_THROW(NoiseSpec::pareto(2.0, -1.0), std::invalid_argument);
  EXPECT_NO_THROW(NoiseSpec::pareto(0.5));
  EXPECT_THROW(NoiseSpec::standard_normal().with_alpha(3.0), std::invalid_argument);
  EXPECT_EQ(NoiseSpec::pareto(2.0).with_alpha(3.0), NoiseSpec::pareto(3.0));
}

TEST(NoiseSpec, ParetoSupportAndQuantile) {
  const NoiseSpec p = NoiseSpec::pareto(2.0, 1.5);
  EXPECT_DOUBLE_EQ(p.from_draw(1.0), 1.5);
  // P(X > x) = (c/x)^α, so the draw u maps to c·u^{-1/α}.
  EXPECT_NEAR(p.from_draw(0.25), 1.5 * 2.0, 1e-12);
  const NoiseSpec c = NoiseSpec::centered_pareto(3.0);
  EXPECT_NEAR(c.from_draw(1.0), 1.0 - 1.5, 1e-12);
}

TEST(NoiseSpec, CenteredParetoMoments) {
  const NoiseSpec spec = NoiseSpec::centered_pareto(6.0);
  const std::vector<double> e = sample_noise(spec, 400000, RngStream{3, 1});
  const NoiseMoments m = noise_moments(spec);
  EXPECT_DOUBLE_EQ(m.mean, 0.0);
  EXPECT_NEAR(m.variance, 6.0 / (4.0 * 25.0), 1e-15);
  const double se = std::sqrt(m.variance / e.size());
  EXPECT_NEAR(mean(e), 0.0, 4.0 * se);
  EXPECT_NEAR(variance(e), m.variance, 0.05 * m.variance);
  EXPECT_GE(*std::min_element(e.begin(), e.end()), 1.0 - 6.0 / 5.0);
}

TEST(NoiseSpec, InfiniteMomentsReported) {
  const NoiseMoments m = noise_moments(NoiseSpec::pareto(0.5));
  EXPECT_TRUE(std::isinf(m.mean));
  EXPECT_TRUE(std::isinf(m.variance));
  const NoiseMoments c = noise_moments(NoiseSpec::centered_pareto(1.5));
  EXPECT_TRUE(std::isinf(c.variance));
}

TEST(NoiseSpec, SampleIsMappedDraws) {
  const RngStream s{21, 4};
  const NoiseSpec spec = NoiseSpec::centered_pareto(2.5);
  const std::vector<double> draws = sample_noise_draws(spec, 50, s);
  const std::vector<double> eps = sample_noise(spec, 50, s);
  for (std::size_t i = 0; i < 50; ++i) EXPECT_EQ(eps[i], spec.from_draw(draws[i]));
  EXPECT_THROW(sample_noise(spec, 0, s), std::invalid_argument);
}

TEST(Hashing, DoubleHashFoldsSignedZero) {
  EXPECT_EQ(hash_double(0.0), hash_double(-0.0));
  EXPECT_NE(hash_double(0.6), hash_double(0.7));
  EXPECT_NE(hash_combine(1, 2), hash_combine(2, 1));
}
