#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "lmsv/dist.hpp"
#include "lmsv/fgn.hpp"

namespace lmsv {

enum class Volatility { Exp };

enum class ChangeKind { None, MeanShift, VarianceScale, TailShift };

// Alternative injected at indices ⌊nτ⌋+1 … n (1-based).
struct ChangeSpec {
  ChangeKind kind = ChangeKind::None;
  double h = 0.0;
  double tau = 0.5;

  static ChangeSpec none() { return {}; }
  static ChangeSpec mean_shift(double h, double tau) { return {ChangeKind::MeanShift, h, tau}; }
  static ChangeSpec variance_scale(double h, double tau) {
    return {ChangeKind::VarianceScale, h, tau};
  }
  static ChangeSpec tail_shift(double h, double tau) { return {ChangeKind::TailShift, h, tau}; }

  // Number of leading observations left untouched, ⌊nτ⌋.
  std::size_t split(std::size_t n) const noexcept;
};

struct SeriesSpec {
  std::size_t n = 0;
  FgnParams fgn;
  NoiseSpec noise = NoiseSpec::standard_normal();
  Volatility volatility = Volatility::Exp;
  ChangeSpec change;

  static SeriesSpec make(std::size_t n, double hurst, NoiseSpec noise,
                         ChangeSpec change = ChangeSpec::none());
  void validate() const;
};

double volatility(Volatility v, double y) noexcept;

// Latent ingredients of one path: the Gaussian driver and the innovation
// draws (standard normals, or the uniforms the Pareto laws are mapped from).
struct LatentPath {
  std::vector<double> y;
  std::vector<double> draws;
};

// Full decomposition returned for export: Y, ε (post-change law applied) and X.
struct SeriesComponents {
  std::vector<double> y;
  std::vector<double> eps;
  std::vector<double> x;
};

// Holds the FGN embedding for one (H, n) so that replications and every
// alternative in a row reuse it. Const member functions are thread-safe.
class SeriesSimulator {
 public:
  explicit SeriesSimulator(FgnParams fgn);

  const FgnParams& fgn() const noexcept { return sampler_.params(); }

  // Y from stream.child(0), innovation draws from stream.child(1).
  LatentPath latent(const NoiseSpec& noise, const RngStream& stream) const;

  // X_j = σ(Y_j)ε_j with the change in `spec` applied.
  std::vector<double> compose(const SeriesSpec& spec, const LatentPath& latent) const;
  SeriesComponents components(const SeriesSpec& spec, const LatentPath& latent) const;

  std::vector<double> simulate(const SeriesSpec& spec, const RngStream& stream) const;

 private:
  FgnSampler sampler_;
};

std::vector<double> simulate_series(const SeriesSpec& spec, const RngStream& stream);
SeriesComponents simulate_components(const SeriesSpec& spec, const RngStream& stream);

// Hill estimator of the right-tail index from the `k` largest positive values.
double hill_estimator(std::span<const double> xs, std::size_t k);

struct TailCheck {
  double alpha_hat;
  double target_alpha;
  std::size_t order_statistics;
};

// Simulates `n_large` observations under the null and returns the Hill
// estimate over the top `top_fraction` of the right tail.
TailCheck verify_breiman_tail(const SeriesSpec& spec, std::size_t n_large, const RngStream& stream,
                              double top_fraction = 0.005);

void write_series_csv(std::ostream& os, std::span<const double> xs);
void write_components_csv(std::ostream& os, const SeriesComponents& c);

}  // namespace lmsv
