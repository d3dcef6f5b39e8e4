#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lmsv {

// Counter-based random stream. A draw is a pure function of
// (seed, stream_id, index), so any range of a stream can be produced
// independently and concurrently.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  // Raw 64-bit draw at position `index`.
  std::uint64_t bits(std::uint64_t index) const noexcept;

  // Uniform on the open interval (0, 1).
  double uniform(std::uint64_t index) const noexcept;

  // Standard normal (Box-Muller over the uniform pair {2i, 2i+1}).
  double normal(std::uint64_t index) const noexcept;

  void fill_uniform(std::span<double> out, std::uint64_t offset = 0) const noexcept;
  void fill_normal(std::span<double> out, std::uint64_t offset = 0) const noexcept;

  // Deterministically derived sub-stream; distinct k give unrelated streams.
  RngStream child(std::uint64_t k) const noexcept;

  friend bool operator==(const RngStream&, const RngStream&) = default;
};

// Stafford "mix13" finalizer, also used for hashing grid coordinates.
std::uint64_t mix64(std::uint64_t x) noexcept;
std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) noexcept;
std::uint64_t hash_double(double x) noexcept;

enum class NoiseKind { StandardNormal, CenteredPareto, Pareto };

// Innovation law. Pareto has density α c^α x^{-α-1} on x ≥ c; CenteredPareto
// subtracts the Pareto mean c·α/(α-1).
class NoiseSpec {
 public:
  static NoiseSpec standard_normal();
  static NoiseSpec centered_pareto(double alpha, double scale = 1.0);
  static NoiseSpec pareto(double alpha, double scale = 1.0);

  NoiseKind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return alpha_; }
  double scale() const noexcept { return scale_; }
  bool is_pareto_type() const noexcept { return kind_ != NoiseKind::StandardNormal; }

  // Same family and scale with a different tail index (validated).
  NoiseSpec with_alpha(double alpha) const;

  // Inverse-CDF map from a uniform draw; for StandardNormal the argument is
  // taken to already be a standard normal variate.
  double from_draw(double u) const noexcept;

  friend bool operator==(const NoiseSpec&, const NoiseSpec&) = default;

 private:
  NoiseSpec(NoiseKind kind, double alpha, double scale)
      : kind_(kind), alpha_(alpha), scale_(scale) {}

  NoiseKind kind_ = NoiseKind::StandardNormal;
  double alpha_ = 0.0;
  double scale_ = 1.0;
};

struct NoiseMoments {
  double mean;           // +inf when it does not exist
  double variance;       // +inf when α ≤ 2
  double second_moment;  // E[ε²]
};

NoiseMoments noise_moments(const NoiseSpec& spec) noexcept;

// n i.i.d. draws. Pareto-type laws consume stream.uniform(i), the normal law
// stream.normal(i), for i in [0, n).
std::vector<double> sample_noise(const NoiseSpec& spec, std::size_t n, const RngStream& stream);

// The underlying draws (uniforms or normals) that `sample_noise` maps.
std::vector<double> sample_noise_draws(const NoiseSpec& spec, std::size_t n,
                                       const RngStream& stream);

}  // namespace lmsv
