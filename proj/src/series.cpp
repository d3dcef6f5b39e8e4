#include "lmsv/series.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace lmsv {

std::size_t ChangeSpec::split(std::size_t n) const noexcept {
  // The small offset keeps products such as 500·0.15 from flooring to 74.
  return static_cast<std::size_t>(std::floor(static_cast<double>(n) * tau + 1e-9));
}

SeriesSpec SeriesSpec::make(std::size_t n, double hurst, NoiseSpec noise, ChangeSpec change) {
  SeriesSpec s;
  s.n = n;
  s.fgn = FgnParams{hurst, n};
  s.noise = noise;
  s.change = change;
  s.validate();
  return s;
}

void SeriesSpec::validate() const {
  fgn.validate();
  if (fgn.n != n) throw std::invalid_argument("SeriesSpec: fgn.n must equal n");
  if (change.kind == ChangeKind::None) return;
  if (!(change.tau > 0.0 && change.tau < 1.0))
    throw std::invalid_argument("change location tau must lie in (0, 1)");
  switch (change.kind) {
    case ChangeKind::VarianceScale:
      if (!(change.h > 0.0)) throw std::invalid_argument("variance scale h must be positive");
      break;
    case ChangeKind::TailShift:
      if (noise.kind() != NoiseKind::Pareto)
        throw std::invalid_argument("tail shift requires (non-centered) Pareto innovations");
      if (!(noise.alpha() + change.h > 0.0))
        throw std::invalid_argument("tail shift leaves a non-positive tail index");
      break;
    default: break;
  }
}

double volatility(Volatility v, double y) noexcept {
  switch (v) {
    case Volatility::Exp: return std::exp(y);
  }
  return std::exp(y);
}

SeriesSimulator::SeriesSimulator(FgnParams fgn) : sampler_(fgn) {}

LatentPath SeriesSimulator::latent(const NoiseSpec& noise, const RngStream& stream) const {
  LatentPath p;
  p.y = sampler_.sample(stream.child(0));
  p.draws = sample_noise_draws(noise, fgn().n, stream.child(1));
  return p;
}

SeriesComponents SeriesSimulator::components(const SeriesSpec& spec,
                                             const LatentPath& latent) const {
  const std::size_t n = spec.n;
  if (n != fgn().n || latent.y.size() != n || latent.draws.size() != n)
    throw std::invalid_argument("SeriesSimulator: spec length does not match the sampler");

  const ChangeSpec& ch = spec.change;
  const std::size_t split = ch.kind == ChangeKind::None ? n : ch.split(n);

  SeriesComponents c;
  c.y = latent.y;
  c.eps.resize(n);
  c.x.resize(n);
  for (std::size_t j = 0; j < split; ++j) c.eps[j] = spec.noise.from_draw(latent.draws[j]);
  if (split < n) {
    // Post-change innovations reuse the same draws, coupling paths across h.
    const NoiseSpec post =
        ch.kind == ChangeKind::TailShift ? spec.noise.with_alpha(spec.noise.alpha() + ch.h)
                                         : spec.noise;
    for (std::size_t j = split; j < n; ++j) c.eps[j] = post.from_draw(latent.draws[j]);
  }
  for (std::size_t j = 0; j < n; ++j) c.x[j] = volatility(spec.volatility, c.y[j]) * c.eps[j];

  if (ch.kind == ChangeKind::MeanShift)
    for (std::size_t j = split; j < n; ++j) c.x[j] += ch.h;
  else if (ch.kind == ChangeKind::VarianceScale)
    for (std::size_t j = split; j < n; ++j) c.x[j] *= ch.h;
  return c;
}

std::vector<double> SeriesSimulator::compose(const SeriesSpec& spec,
                                             const LatentPath& latent) const {
  return components(spec, latent).x;
}

std::vector<double> SeriesSimulator::simulate(const SeriesSpec& spec,
                                              const RngStream& stream) const {
  spec.validate();
  return compose(spec, latent(spec.noise, stream));
}

std::vector<double> simulate_series(const SeriesSpec& spec, const RngStream& stream) {
  spec.validate();
  return SeriesSimulator(spec.fgn).simulate(spec, stream);
}

SeriesComponents simulate_components(const SeriesSpec& spec, const RngStream& stream) {
  spec.validate();
  SeriesSimulator sim(spec.fgn);
  return sim.components(spec, sim.latent(spec.noise, stream));
}

double hill_estimator(std::span<const double> xs, std::size_t k) {
  std::vector<double> pos;
  pos.reserve(xs.size());
  for (double v : xs)
    if (v > 0.0) pos.push_back(v);
  if (k < 1 || k >= pos.size())
    throw std::invalid_argument("hill_estimator: need 1 <= k < number of positive values");
  std::nth_element(pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(k), pos.end(),
                   std::greater<>());
  const double threshold = pos[k];
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) acc += std::log(pos[i] / threshold);
  return static_cast<double>(k) / acc;
}

TailCheck verify_breiman_tail(const SeriesSpec& spec, std::size_t n_large, const RngStream& stream,
                              double top_fraction) {
  if (!spec.noise.is_pareto_type())
    throw std::invalid_argument("verify_breiman_tail: innovations have no power tail");
  if (!(top_fraction > 0.0 && top_fraction < 1.0))
    throw std::invalid_argument("verify_breiman_tail: top_fraction must lie in (0, 1)");
  SeriesSpec big = SeriesSpec::make(n_large, spec.fgn.hurst, spec.noise);
  const std::vector<double> x = simulate_series(big, stream);
  const auto k = static_cast<std::size_t>(top_fraction * static_cast<double>(n_large));
  return {hill_estimator(x, k), spec.noise.alpha(), k};
}

void write_series_csv(std::ostream& os, std::span<const double> xs) {
  os.precision(17);
  os << "x\n";
  for (double v : xs) os << v << '\n';
}

void write_components_csv(std::ostream& os, const SeriesComponents& c) {
  os.precision(17);
  os << "y,eps,x\n";
  for (std::size_t j = 0; j < c.x.size(); ++j) os << c.y[j] << ',' << c.eps[j] << ',' << c.x[j] << '\n';
}

}  // namespace lmsv
