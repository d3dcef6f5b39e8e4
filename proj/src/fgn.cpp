#include "lmsv/fgn.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <string>

namespace lmsv {

namespace {

// The FFTW planner is not thread-safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n) : data(fftw_alloc_complex(n)) {
    if (!data) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* data;
};

std::size_t next_pow2(std::size_t v) {
  std::size_t p = 1;
  while (p < v) p <<= 1;
  return p;
}

}  // namespace

struct FgnSampler::Plan {
  fftw_plan forward = nullptr;
  ~Plan() {
    if (forward) {
      std::lock_guard lock(planner_mutex());
      fftw_destroy_plan(forward);
    }
  }
};

void FgnParams::validate() const {
  if (!(hurst > 0.0 && hurst < 1.0))
    throw std::invalid_argument("Hurst parameter must lie in (0, 1), got " + std::to_string(hurst));
  if (n < 2) throw std::invalid_argument("FGN length must be at least 2");
}

double fgn_autocovariance(double hurst, std::size_t lag) {
  if (lag == 0) return 1.0;
  const double k = static_cast<double>(lag);
  const double e = 2.0 * hurst;
  return 0.5 * (std::pow(k + 1.0, e) - 2.0 * std::pow(k, e) + std::pow(k - 1.0, e));
}

double fgn_slowly_varying_constant(double hurst) noexcept { return hurst * (2.0 * hurst - 1.0); }

FgnSampler::FgnSampler(FgnParams params) : params_(params) {
  params_.validate();
  // 2(n-1) is the minimal circulant size; n = 2 still needs M = 2.
  embedding_size_ = next_pow2(std::max<std::size_t>(2 * (params_.n - 1), 2));
  white_ = params_.hurst == 0.5;
  if (white_) return;

  const std::size_t m = embedding_size_;
  const std::size_t half = m / 2;
  FftwBuffer in(m), out(m);
  for (std::size_t j = 0; j < m; ++j) {
    in.data[j][0] = fgn_autocovariance(params_.hurst, j <= half ? j : m - j);
    in.data[j][1] = 0.0;
  }

  plan_ = std::make_unique<Plan>();
  {
    std::lock_guard lock(planner_mutex());
    plan_->forward =
        fftw_plan_dft_1d(static_cast<int>(m), in.data, out.data, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  for (std::size_t j = 0; j < m; ++j) {
    in.data[j][0] = fgn_autocovariance(params_.hurst, j <= half ? j : m - j);
    in.data[j][1] = 0.0;
  }
  fftw_execute_dft(plan_->forward, in.data, out.data);

  scale_.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double lambda = out.data[k][0];
    if (lambda < -kNegativeEigenTolerance)
      throw NegativeEigenvalueError("circulant embedding has negative eigenvalue " +
                                    std::to_string(lambda) + " at index " + std::to_string(k) +
                                    " (H=" + std::to_string(params_.hurst) + ")");
    scale_[k] = std::sqrt(std::max(lambda, 0.0) / static_cast<double>(m));
  }
}

FgnSampler::~FgnSampler() = default;
FgnSampler::FgnSampler(FgnSampler&&) noexcept = default;
FgnSampler& FgnSampler::operator=(FgnSampler&&) noexcept = default;

void FgnSampler::sample_into(const RngStream& stream, std::span<double> out) const {
  if (out.size() != params_.n) throw std::invalid_argument("FgnSampler: output size mismatch");
  if (white_) {
    // Identity covariance: the embedding reduces to i.i.d. normals.
    stream.fill_normal(out);
    return;
  }
  const std::size_t m = embedding_size_;
  std::vector<double> z(2 * m);
  stream.fill_normal(z);
  FftwBuffer in(m), res(m);
  for (std::size_t k = 0; k < m; ++k) {
    in.data[k][0] = scale_[k] * z[2 * k];
    in.data[k][1] = scale_[k] * z[2 * k + 1];
  }
  fftw_execute_dft(plan_->forward, in.data, res.data);
  for (std::size_t j = 0; j < params_.n; ++j) out[j] = res.data[j][0];
}

std::vector<double> FgnSampler::sample(const RngStream& stream) const {
  std::vector<double> out(params_.n);
  sample_into(stream, out);
  return out;
}

std::vector<double> sample_fgn(const FgnParams& params, const RngStream& stream) {
  return FgnSampler(params).sample(stream);
}

}  // namespace lmsv
