#include "lmsv/asymp.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lmsv/fgn.hpp"
#include "lmsv/parallel.hpp"

namespace lmsv {

double hermite_polynomial(int q, double x) noexcept {
  if (q <= 0) return 1.0;
  double prev = 1.0, cur = x;
  for (int k = 1; k < q; ++k) {
    const double next = x * cur - k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double factorial(int m) noexcept {
  double f = 1.0;
  for (int k = 2; k <= m; ++k) f *= k;
  return f;
}

namespace {

void require_rank(double hurst, int m) {
  if (!(hurst > 0.0 && hurst < 1.0)) throw std::invalid_argument("Hurst parameter must lie in (0, 1)");
  if (m < 1) throw std::invalid_argument("Hermite rank must be at least 1");
}

void require_long_memory(double memory, int m) {
  if (!(m * memory < 1.0))
    throw std::invalid_argument("non-central limit needs m*D < 1 (m=" + std::to_string(m) +
                                ", D=" + std::to_string(memory) + ")");
}

}  // namespace

double hermite_constant(int m, double memory) {
  require_long_memory(memory, m);
  const double md = m * memory;
  return 2.0 * factorial(m) / ((1.0 - md) * (2.0 - md));
}

double dnm_exact(double hurst, int m, std::size_t n) {
  require_rank(hurst, m);
  if (n == 0) throw std::invalid_argument("dnm_exact: n must be positive");
  long double acc = 0.0L;
  for (std::size_t k = 1; k < n; ++k)
    acc += static_cast<long double>(n - k) * std::pow(static_cast<long double>(fgn_autocovariance(hurst, k)), m);
  const long double var = factorial(m) * (static_cast<long double>(n) + 2.0L * acc);
  return static_cast<double>(std::sqrt(var));
}

double dnm_asymptotic(double hurst, int m, std::size_t n) {
  require_rank(hurst, m);
  const double memory = 2.0 * (1.0 - hurst);
  const double c = hermite_constant(m, memory);
  const double l = fgn_slowly_varying_constant(hurst);
  return std::sqrt(c * std::pow(static_cast<double>(n), 2.0 - m * memory) * std::pow(l, m));
}

double HermiteSetup::limit_scale() const noexcept {
  return regime == Regime::ShortMemory ? scale : std::abs(coefficient) / factorial(m);
}

HermiteSetup hermite_rank_and_coeff(ProblemKind problem, const NoiseSpec& noise, double hurst) {
  require_rank(hurst, 1);
  HermiteSetup s;
  s.hurst = hurst;
  s.memory = 2.0 * (1.0 - hurst);
  s.m = 1;
  const NoiseMoments mom = noise_moments(noise);
  const double e2 = std::exp(2.0);  // E exp(2Y) for unit-variance Y

  switch (problem) {
    case ProblemKind::MeanCusum:
      if (noise.kind() == NoiseKind::Pareto)
        throw std::invalid_argument("mean problem needs centered innovations");
      if (!std::isfinite(mom.variance))
        throw std::invalid_argument("mean CUSUM needs finite innovation variance (alpha > 2)");
      s.regime = Regime::ShortMemory;
      s.coefficient = 0.0;
      s.scale = std::sqrt(mom.variance * e2);
      return s;
    case ProblemKind::VarCusum:
      if (!std::isfinite(mom.second_moment))
        throw std::invalid_argument("variance CUSUM needs a finite second moment (alpha > 2)");
      // E[Y exp(2Y)] = 2e²
      s.coefficient = 2.0 * e2 * mom.second_moment;
      return s;
    case ProblemKind::TailCusum:
      s.coefficient = 1.0;
      return s;
    case ProblemKind::MeanWilcoxonPareto:
    case ProblemKind::VarWilcoxonPareto: {
      if (noise.kind() != NoiseKind::CenteredPareto)
        throw std::invalid_argument(
            "Wilcoxon limit factor is only available for centered Pareto innovations "
            "(it vanishes for symmetric noise)");
      const auto which = problem == ProblemKind::MeanWilcoxonPareto ? WilcoxonProblem::MeanPareto
                                                                    : WilcoxonProblem::VarPareto;
      s.coefficient = wilcoxon_limit_factor(which, noise.alpha()).value;
      return s;
    }
  }
  throw std::invalid_argument("unknown problem kind");
}

// ---------------------------------------------------------------------------

QuadratureResult wilcoxon_limit_factor(WilcoxonProblem problem, double alpha,
                                       double relative_tolerance) {
  using boost::math::quadrature::gauss_kronrod;
  if (!(alpha > 1.0) || !std::isfinite(alpha))
    throw std::invalid_argument("Wilcoxon limit factor needs alpha > 1");
  if (!(relative_tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");

  const double mu = alpha / (alpha - 1.0);
  const double v_neg_max = std::log(mu - 1.0);  // support of −ε is |ε| ≤ μ − 1
  constexpr double inner_halfwidth = 12.0;
  constexpr double s_lo = -40.0, s_hi = 40.0;
  // Depth caps bound the work when the tolerance cannot be met.
  constexpr unsigned inner_depth = 8, outer_depth = 10;
  const double inner_tol = relative_tolerance * 1e-2;
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

  auto phi = [&](double z) { return inv_sqrt_2pi * std::exp(-0.5 * z * z); };

  // Density of log X on the positive and negative side (in s).
  auto a_of = [&](double s) {
    auto f = [&](double v) {
      return alpha * std::exp(v - (alpha + 1.0) * std::log(mu + std::exp(v))) * phi(v - s);
    };
    return gauss_kronrod<double, 31>::integrate(f, s - inner_halfwidth, s + inner_halfwidth, inner_depth,
                                                inner_tol);
  };
  auto b_of = [&](double s) {
    const double hi = std::min(s + inner_halfwidth, v_neg_max);
    const double lo = s - inner_halfwidth;
    if (!(hi > lo)) return 0.0;
    auto f = [&](double v) {
      const double w = mu - std::exp(v);
      if (!(w > 0.0)) return 0.0;
      return alpha * std::exp(v - (alpha + 1.0) * std::log(w)) * phi(v - s);
    };
    return gauss_kronrod<double, 31>::integrate(f, lo, hi, inner_depth, inner_tol);
  };

  auto outer = [&](double s) {
    const double a = a_of(s);
    const double b = b_of(s);
    return problem == WilcoxonProblem::MeanPareto ? b * b - a * a : (a + b) * (a + b);
  };

  double err = 0.0;
  const double value =
      gauss_kronrod<double, 31>::integrate(outer, s_lo, s_hi, outer_depth, relative_tolerance * 0.1, &err);
  QuadratureResult r{std::abs(value), err};
  if (!std::isfinite(value) || err > relative_tolerance * std::abs(value))
    throw QuadratureError("Wilcoxon limit factor did not reach relative tolerance " +
                              std::to_string(relative_tolerance) + " (alpha=" +
                              std::to_string(alpha) + ", error " + std::to_string(err) + ")",
                          r);
  return r;
}

// ---------------------------------------------------------------------------

struct HermitePathGenerator::Impl {
  FgnSampler sampler;
};

HermitePathGenerator::HermitePathGenerator(double hurst, int m, std::size_t path_length)
    : length_(path_length), m_(m) {
  require_rank(hurst, m);
  if (path_length < 2) throw std::invalid_argument("path length must be at least 2");
  if (m >= 2) require_long_memory(2.0 * (1.0 - hurst), m);
  norm_ = dnm_exact(hurst, m, path_length);
  impl_ = std::make_unique<Impl>(Impl{FgnSampler(FgnParams{hurst, path_length})});
}

HermitePathGenerator::~HermitePathGenerator() = default;
HermitePathGenerator::HermitePathGenerator(HermitePathGenerator&&) noexcept = default;

void HermitePathGenerator::sample(const RngStream& stream, std::span<double> out) const {
  if (out.size() != length_ + 1) throw std::invalid_argument("HermitePathGenerator: need N+1 slots");
  std::vector<double> y(length_);
  impl_->sampler.sample_into(stream, y);
  long double acc = 0.0L;
  out[0] = 0.0;
  for (std::size_t j = 0; j < length_; ++j) {
    acc += hermite_polynomial(m_, y[j]);
    out[j + 1] = static_cast<double>(acc / norm_);
  }
}

HermitePathEnsemble simulate_hermite_paths(double hurst, int m, std::size_t path_length,
                                           std::size_t path_count, const RngStream& stream) {
  const HermitePathGenerator gen(hurst, m, path_length);
  HermitePathEnsemble e;
  e.path_length = path_length;
  e.path_count = path_count;
  e.values.resize(path_count * (path_length + 1));
  parallel_for(path_count, [&](std::size_t i) {
    gen.sample(stream.child(i), std::span<double>(e.values.data() + i * (path_length + 1),
                                                  path_length + 1));
  });
  return e;
}

double bridge_sup(std::span<const double> path) {
  if (path.size() < 2) throw std::invalid_argument("bridge_sup: path too short");
  const std::size_t n = path.size() - 1;
  const double end = path[n];
  double best = 0.0;
  for (std::size_t i = 0; i <= n; ++i)
    best = std::max(best, std::abs(path[i] - static_cast<double>(i) / n * end));
  return best;
}

double sn_ratio(std::span<const double> path, TrimSpec trim) {
  trim.validate();
  if (path.size() < 3) throw std::invalid_argument("sn_ratio: path too short");
  using ld = long double;
  const std::size_t n = path.size() - 1;
  const ld dn = static_cast<ld>(n);
  const ld h = 1.0L / dn;

  // Prefix sums over j = 1 … i of z_j², j z_j, z_j.
  std::vector<ld> q(n + 1, 0.0L), r(n + 1, 0.0L), z(n + 1, 0.0L);
  for (std::size_t j = 1; j <= n; ++j) {
    const ld v = path[j];
    q[j] = q[j - 1] + v * v;
    r[j] = r[j - 1] + static_cast<ld>(j) * v;
    z[j] = z[j - 1] + v;
  }

  auto lo = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * trim.tau1 - 1e-9));
  auto hi = static_cast<std::size_t>(std::floor(static_cast<double>(n) * trim.tau2 + 1e-9));
  lo = std::max<std::size_t>(lo, 1);
  hi = std::min(hi, n - 1);
  if (lo > hi) throw std::invalid_argument("sn_ratio: empty trimmed grid");

  const ld zn = path[n];
  double best = 0.0;
  for (std::size_t i = lo; i <= hi; ++i) {
    const ld di = static_cast<ld>(i);
    const ld zi = path[i];
    const ld b = zi / di;
    const ld ti = di * (di + 1.0L) * (2.0L * di + 1.0L) / 6.0L;
    const ld i1 = q[i] - 2.0L * b * r[i] + b * b * ti;

    const ld c = dn - di;
    const ld a = (zn - zi) / c;
    const ld q2 = q[n] - q[i], r2 = r[n] - r[i], s2 = z[n] - z[i];
    const ld sum_j = (dn * (dn + 1.0L) - di * (di + 1.0L)) / 2.0L;
    const ld ww = q2 - 2.0L * zi * s2 + c * zi * zi;
    const ld dw = (r2 - di * s2) - zi * (sum_j - di * c);
    const ld dd = c * (c + 1.0L) * (2.0L * c + 1.0L) / 6.0L;
    const ld i2 = ww - 2.0L * a * dw + a * a * dd;

    const ld denom = h * (i1 + i2);
    const ld num = std::abs(zi - di / dn * zn);
    if (!(denom > 0.0L)) return std::numeric_limits<double>::infinity();
    best = std::max(best, static_cast<double>(num / std::sqrt(denom)));
  }
  return best;
}

double kolmogorov_cdf(double x) noexcept {
  if (!(x > 0.0)) return 0.0;
  constexpr double pi = std::numbers::pi;
  if (x < 1.0) {
    // Theta-transformed series, fast for small x.
    double s = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double t = (2.0 * k - 1.0) * pi / x;
      s += std::exp(-t * t / 8.0);
    }
    return std::sqrt(2.0 * pi) / x * s;
  }
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    s += (k % 2 ? 1.0 : -1.0) * term;
    if (term < 1e-300) break;
  }
  return 1.0 - 2.0 * s;
}

double kolmogorov_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("kolmogorov_quantile: p must lie in (0, 1)");
  boost::uintmax_t iters = 200;
  auto f = [p](double x) { return kolmogorov_cdf(x) - p; };
  const auto [lo, hi] = boost::math::tools::toms748_solve(
      f, 0.05, 10.0, boost::math::tools::eps_tolerance<double>(50), iters);
  return 0.5 * (lo + hi);
}

}  // namespace lmsv
