#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "lmsv/dist.hpp"

namespace lmsv {

struct FgnParams {
  double hurst = 0.5;
  std::size_t n = 0;

  // D = 2(1 - H).
  double memory() const noexcept { return 2.0 * (1.0 - hurst); }
  void validate() const;
};

// γ(k) = ½(|k+1|^{2H} − 2|k|^{2H} + |k−1|^{2H}), unit variance at lag 0.
double fgn_autocovariance(double hurst, std::size_t lag);

// Limit of γ(k)·k^{D}: the constant L_γ = H(2H−1) of the slowly varying part.
double fgn_slowly_varying_constant(double hurst) noexcept;

class NegativeEigenvalueError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Davies-Harte circulant-embedding sampler. The eigenvalues of the embedding
// are computed once; `sample` is const and may be called concurrently.
class FgnSampler {
 public:
  static constexpr double kNegativeEigenTolerance = 1e-8;

  explicit FgnSampler(FgnParams params);
  ~FgnSampler();
  FgnSampler(FgnSampler&&) noexcept;
  FgnSampler& operator=(FgnSampler&&) noexcept;

  const FgnParams& params() const noexcept { return params_; }
  std::size_t embedding_size() const noexcept { return embedding_size_; }

  // Standard normals consumed: 2·embedding_size from stream.normal(0..).
  std::vector<double> sample(const RngStream& stream) const;
  void sample_into(const RngStream& stream, std::span<double> out) const;

 private:
  struct Plan;

  FgnParams params_;
  std::size_t embedding_size_ = 0;
  bool white_ = false;
  std::vector<double> scale_;  // sqrt(λ_k / M)
  std::unique_ptr<Plan> plan_;
};

std::vector<double> sample_fgn(const FgnParams& params, const RngStream& stream);

}  // namespace lmsv
