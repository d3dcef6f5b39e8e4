#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "lmsv/asymp.hpp"
#include "lmsv/fgn.hpp"
#include "oracles.hpp"

using namespace lmsv;

namespace {

double phi(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

// E[f(Y)] for standard normal Y.
template <class F>
double gaussian_mean(F f) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 61>::integrate([&](double y) { return f(y) * phi(y); }, -14.0, 14.0,
                                              15, 1e-13);
}

// E[f(Y1) g(Y2)] for a standard bivariate normal with correlation rho.
template <class F, class G>
double bivariate_mean(F f, G g, double rho) {
  using boost::math::quadrature::gauss_kronrod;
  const double s = std::sqrt(1.0 - rho * rho);
  auto inner = [&](double y1) {
    auto h = [&](double z) { return g(rho * y1 + s * z) * phi(z); };
    return f(y1) * phi(y1) * gauss_kronrod<double, 61>::integrate(h, -12.0, 12.0, 12, 1e-12);
  };
  return gauss_kronrod<double, 61>::integrate(inner, -12.0, 12.0, 12, 1e-11);
}

}  // namespace

TEST(Hermite, Recurrence) {
  for (double x : {-2.0, -0.3, 0.0, 1.7}) {
    EXPECT_DOUBLE_EQ(hermite_polynomial(0, x), 1.0);
    EXPECT_DOUBLE_EQ(hermite_polynomial(1, x), x);
    EXPECT_NEAR(hermite_polynomial(2, x), x * x - 1.0, 1e-14);
    EXPECT_NEAR(hermite_polynomial(3, x), x * x * x - 3.0 * x, 1e-13);
    for (int q = 1; q < 8; ++q)
      EXPECT_NEAR(hermite_polynomial(q + 1, x),
                  x * hermite_polynomial(q, x) - q * hermite_polynomial(q - 1, x), 1e-10);
  }
}

TEST(Hermite, Orthogonality) {
  for (int p = 0; p <= 5; ++p)
    for (int q = 0; q <= 5; ++q) {
      const double v = gaussian_mean([&](double y) { return hermite_polynomial(p, y) * hermite_polynomial(q, y); });
      EXPECT_NEAR(v, p == q ? factorial(p) : 0.0, 1e-9) << p << "," << q;
    }
}

TEST(Hermite, CorrelatedMoments) {
  // E[H_m(Y1) H_m(Y2)] = m! ρ^m, the identity behind d_{n,m}.
  for (double rho : {0.2, 0.6, 0.9})
    for (int m = 1; m <= 3; ++m) {
      auto hm = [m](double y) { return hermite_polynomial(m, y); };
      EXPECT_NEAR(bivariate_mean(hm, hm, rho), factorial(m) * std::pow(rho, m), 1e-7);
    }
}

TEST(Hermite, ConstantRequiresLongMemory) {
  EXPECT_NEAR(hermite_constant(1, 0.4), 2.0 / (0.6 * 1.6), 1e-15);
  EXPECT_THROW(hermite_constant(2, 0.6), std::invalid_argument);
}

TEST(Dnm, ExactMatchesDoubleSum) {
  for (double h : {0.55, 0.6, 0.75, 0.9})
    for (int m : {1, 2, 3})
      for (long n : {1L, 2L, 37L, 200L}) {
        const double o = oracle::dnm_double_sum(h, m, n);
        EXPECT_NEAR(dnm_exact(h, m, static_cast<std::size_t>(n)), o, 1e-10 * o);
      }
  EXPECT_NEAR(dnm_exact(0.5, 1, 400), 20.0, 1e-12);
}

TEST(Dnm, AsymptoticGrowth) {
  EXPECT_NEAR(dnm_asymptotic(0.8, 1, 10000) / dnm_exact(0.8, 1, 10000), 1.0, 0.01);
  EXPECT_NEAR(dnm_asymptotic(0.9, 2, 10000) / dnm_exact(0.9, 2, 10000), 1.0, 0.05);
  EXPECT_THROW(dnm_asymptotic(0.7, 2, 100), std::invalid_argument);
}

TEST(HermiteSetup, Coefficients) {
  const double e2 = std::exp(2.0);
  const HermiteSetup mean = hermite_rank_and_coeff(ProblemKind::MeanCusum, NoiseSpec::standard_normal(), 0.7);
  EXPECT_EQ(mean.regime, Regime::ShortMemory);
  EXPECT_NEAR(mean.limit_scale(), std::exp(1.0), 1e-14);

  const NoiseSpec p = NoiseSpec::centered_pareto(4.0);
  const HermiteSetup var = hermite_rank_and_coeff(ProblemKind::VarCusum, p, 0.7);
  EXPECT_EQ(var.regime, Regime::LongMemory);
  EXPECT_EQ(var.m, 1);
  EXPECT_NEAR(var.coefficient, 2.0 * e2 * noise_moments(p).variance, 1e-12);
  // J₁ = E[Y·E(ψ(X)|Y)] checked by quadrature: E[Y exp(2Y)] E ε².
  EXPECT_NEAR(gaussian_mean([](double y) { return y * std::exp(2.0 * y); }), 2.0 * e2, 1e-9);

  EXPECT_DOUBLE_EQ(hermite_rank_and_coeff(ProblemKind::TailCusum, NoiseSpec::pareto(0.5), 0.6).coefficient, 1.0);
  EXPECT_THROW(hermite_rank_and_coeff(ProblemKind::MeanCusum, NoiseSpec::centered_pareto(1.8), 0.7),
               std::invalid_argument);
  EXPECT_THROW(hermite_rank_and_coeff(ProblemKind::MeanWilcoxonPareto, NoiseSpec::standard_normal(), 0.7),
               std::invalid_argument);
}

class WilcoxonFactor : public ::testing::TestWithParam<double> {};

TEST_P(WilcoxonFactor, MatchesMonteCarlo) {
  const double alpha = GetParam();
  for (bool square : {false, true}) {
    const QuadratureResult q = wilcoxon_limit_factor(
        square ? WilcoxonProblem::VarPareto : WilcoxonProblem::MeanPareto, alpha);
    const auto [mc, se] = oracle::wilcoxon_factor_mc(alpha, square, 4'000'000, 99 + square);
    EXPECT_NEAR(q.value, mc, 4.0 * se) << "alpha=" << alpha << " square=" << square;
    EXPECT_LE(q.error_estimate, 1e-4 * q.value);
  }
}

INSTANTIATE_TEST_SUITE_P(Alphas, WilcoxonFactor, ::testing::Values(1.5, 2.5, 4.0, 6.0));

TEST(WilcoxonFactorLimits, LargeAlphaContinuity) {
  // Scale invariance of ranks: α → ∞ approaches the centered exponential law.
  const double a = wilcoxon_limit_factor(WilcoxonProblem::MeanPareto, 100.0).value;
  const double b = wilcoxon_limit_factor(WilcoxonProblem::MeanPareto, 200.0).value;
  EXPECT_NEAR(a, b, 0.002);
}

TEST(WilcoxonFactorLimits, UnreachableToleranceReportsPartial) {
  try {
    wilcoxon_limit_factor(WilcoxonProblem::MeanPareto, 4.0, 1e-17);
    FAIL() << "expected QuadratureError";
  } catch (const QuadratureError& e) {
    EXPECT_GT(e.partial().value, 0.0);
  }
  EXPECT_THROW(wilcoxon_limit_factor(WilcoxonProblem::MeanPareto, 1.0), std::invalid_argument);
}

TEST(LimitPaths, UnitVarianceAtOne) {
  for (auto [h, m] : {std::pair{0.7, 1}, {0.9, 2}}) {
    const HermitePathEnsemble e = simulate_hermite_paths(h, m, 256, 4000, RngStream{5, 5});
    double s2 = 0.0;
    for (std::size_t i = 0; i < e.path_count; ++i) {
      const auto p = e.path(i);
      EXPECT_EQ(p.front(), 0.0);
      s2 += p.back() * p.back();
    }
    const double v = s2 / e.path_count;
    // Var of a squared variable; the Rosenblatt case has heavier tails.
    EXPECT_NEAR(v, 1.0, m == 1 ? 0.07 : 0.15) << "H=" << h << " m=" << m;
  }
  EXPECT_THROW(HermitePathGenerator(0.7, 2, 100), std::invalid_argument);
}

TEST(LimitPaths, Deterministic) {
  const auto a = simulate_hermite_paths(0.8, 1, 64, 10, RngStream{1, 2});
  const auto b = simulate_hermite_paths(0.8, 1, 64, 10, RngStream{1, 2});
  EXPECT_EQ(a.values, b.values);
}

TEST(Functionals, BridgeSup) {
  const std::vector<double> p{0.0, 1.0, 0.0, 2.0};
  // |z_i − (i/3)·2| = 0, 1/3, 4/3, 0.
  EXPECT_NEAR(bridge_sup(p), 4.0 / 3.0, 1e-15);
}

TEST(Functionals, SnRatioMatchesDirectSums) {
  const auto e = simulate_hermite_paths(0.75, 1, 500, 5, RngStream{8, 8});
  const TrimSpec trim;
  for (std::size_t k = 0; k < e.path_count; ++k) {
    const auto z = e.path(k);
    const std::size_t n = z.size() - 1;
    double best = 0.0;
    for (std::size_t i = 75; i <= 425; ++i) {
      double d = 0.0;
      for (std::size_t j = 0; j <= i; ++j) {
        const double v = z[j] - static_cast<double>(j) / i * z[i];
        d += v * v;
      }
      for (std::size_t j = i; j <= n; ++j) {
        const double v = z[j] - z[i] - static_cast<double>(j - i) / (n - i) * (z[n] - z[i]);
        d += v * v;
      }
      best = std::max(best, std::abs(z[i] - static_cast<double>(i) / n * z[n]) / std::sqrt(d / n));
    }
    EXPECT_NEAR(sn_ratio(z, trim), best, 1e-9 * best);
  }
}

TEST(Functionals, SnRatioAgreesWithDiscreteStatistic) {
  // On a path built from partial sums the ratio equals the SN statistic.
  const std::vector<double> xi{0.3, -1.2, 2.0, 0.7, -0.4, 1.1, -2.2, 0.9, 0.1, -0.5,
                               1.4, 0.2, -0.8, 0.6, 1.9, -1.1, 0.0, 0.45, -0.3, 0.8};
  std::vector<double> path{0.0};
  for (double v : xi) path.push_back(path.back() + v);
  const TrimSpec trim{0.2, 0.8};
  EXPECT_NEAR(sn_ratio(path, trim), sn_statistic(xi, trim, Family::SnCusum).statistic, 1e-10);
}

TEST(Kolmogorov, MatchesSeriesOracle) {
  for (double x : {0.3, 0.6, 0.9, 1.0, 1.2, 1.358, 2.0})
    EXPECT_NEAR(kolmogorov_cdf(x), oracle::kolmogorov_cdf(x), 1e-12) << x;
  EXPECT_NEAR(kolmogorov_quantile(0.95), oracle::kolmogorov_quantile(0.95), 1e-9);
  EXPECT_NEAR(kolmogorov_quantile(0.95), 1.3581, 1e-4);
  EXPECT_THROW(kolmogorov_quantile(1.0), std::invalid_argument);
}
