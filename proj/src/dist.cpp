#include "lmsv/dist.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lmsv {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double to_open_unit(std::uint64_t b) noexcept {
  return (static_cast<double>(b >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) noexcept {
  return mix64(h ^ (mix64(v) + kGolden + (h << 6) + (h >> 2)));
}

std::uint64_t hash_double(double x) noexcept {
  if (x == 0.0) x = 0.0;  // fold -0 onto +0
  std::uint64_t b = 0;
  std::memcpy(&b, &x, sizeof b);
  return mix64(b);
}

std::uint64_t RngStream::bits(std::uint64_t index) const noexcept {
  // Two keyed rounds of the finalizer over the counter.
  const std::uint64_t k1 = mix64(seed ^ 0x6A09E667F3BCC909ULL);
  const std::uint64_t k2 = mix64(stream_id + kGolden);
  return mix64(mix64(index * kGolden + k1) ^ k2);
}

double RngStream::uniform(std::uint64_t index) const noexcept { return to_open_unit(bits(index)); }

double RngStream::normal(std::uint64_t index) const noexcept {
  const std::uint64_t pair = index >> 1;
  const double u1 = uniform(2 * pair);
  const double u2 = uniform(2 * pair + 1);
  const double r = std::sqrt(-2.0 * std::log(u1));
  return (index & 1) ? r * std::sin(kTwoPi * u2) : r * std::cos(kTwoPi * u2);
}

void RngStream::fill_uniform(std::span<double> out, std::uint64_t offset) const noexcept {
  const std::uint64_t k1 = mix64(seed ^ 0x6A09E667F3BCC909ULL);
  const std::uint64_t k2 = mix64(stream_id + kGolden);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint64_t idx = offset + i;
    out[i] = to_open_unit(mix64(mix64(idx * kGolden + k1) ^ k2));
  }
}

void RngStream::fill_normal(std::span<double> out, std::uint64_t offset) const noexcept {
  std::size_t i = 0;
  // Leading odd index belongs to a pair that starts before the range.
  if ((offset & 1) && i < out.size()) {
    out[i] = normal(offset);
    ++i;
  }
  for (; i + 1 < out.size(); i += 2) {
    const std::uint64_t pair = (offset + i) >> 1;
    const double u1 = uniform(2 * pair);
    const double u2 = uniform(2 * pair + 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    out[i] = r * std::cos(kTwoPi * u2);
    out[i + 1] = r * std::sin(kTwoPi * u2);
  }
  if (i < out.size()) out[i] = normal(offset + i);
}

RngStream RngStream::child(std::uint64_t k) const noexcept {
  return RngStream{seed, hash_combine(stream_id, k)};
}

NoiseSpec NoiseSpec::standard_normal() { return NoiseSpec(NoiseKind::StandardNormal, 0.0, 1.0); }

NoiseSpec NoiseSpec::centered_pareto(double alpha, double scale) {
  if (!(alpha > 1.0) || !std::isfinite(alpha))
    throw std::invalid_argument("centered Pareto requires alpha > 1 (mean must exist), got " +
                                std::to_string(alpha));
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw std::invalid_argument("Pareto scale must be positive");
  return NoiseSpec(NoiseKind::CenteredPareto, alpha, scale);
}

NoiseSpec NoiseSpec::pareto(double alpha, double scale) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("Pareto requires alpha > 0, got " + std::to_string(alpha));
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw std::invalid_argument("Pareto scale must be positive");
  return NoiseSpec(NoiseKind::Pareto, alpha, scale);
}

NoiseSpec NoiseSpec::with_alpha(double alpha) const {
  switch (kind_) {
    case NoiseKind::CenteredPareto: return centered_pareto(alpha, scale_);
    case NoiseKind::Pareto: return pareto(alpha, scale_);
    case NoiseKind::StandardNormal: break;
  }
  throw std::invalid_argument("standard normal noise has no tail index");
}

double NoiseSpec::from_draw(double u) const noexcept {
  switch (kind_) {
    case NoiseKind::StandardNormal: return u;
    case NoiseKind::Pareto: return scale_ * std::pow(u, -1.0 / alpha_);
    case NoiseKind::CenteredPareto:
      return scale_ * std::pow(u, -1.0 / alpha_) - scale_ * alpha_ / (alpha_ - 1.0);
  }
  return u;
}

NoiseMoments noise_moments(const NoiseSpec& spec) noexcept {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (spec.kind() == NoiseKind::StandardNormal) return {0.0, 1.0, 1.0};

  const double a = spec.alpha();
  const double c = spec.scale();
  const double variance = a > 2.0 ? c * c * a / ((a - 2.0) * (a - 1.0) * (a - 1.0)) : inf;
  if (spec.kind() == NoiseKind::CenteredPareto) return {0.0, variance, variance};

  const double mean = a > 1.0 ? c * a / (a - 1.0) : inf;
  const double second = a > 2.0 ? c * c * a / (a - 2.0) : inf;
  return {mean, variance, second};
}

std::vector<double> sample_noise_draws(const NoiseSpec& spec, std::size_t n,
                                       const RngStream& stream) {
  std::vector<double> draws(n);
  if (spec.kind() == NoiseKind::StandardNormal)
    stream.fill_normal(draws);
  else
    stream.fill_uniform(draws);
  return draws;
}

std::vector<double> sample_noise(const NoiseSpec& spec, std::size_t n, const RngStream& stream) {
  if (n == 0) throw std::invalid_argument("sample_noise: n must be at least 1");
  std::vector<double> out = sample_noise_draws(spec, n, stream);
  if (spec.kind() != NoiseKind::StandardNormal)
    for (double& v : out) v = spec.from_draw(v);
  return out;
}

}  // namespace lmsv
