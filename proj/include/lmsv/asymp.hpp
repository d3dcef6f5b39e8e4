#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lmsv/dist.hpp"
#include "lmsv/stats.hpp"

namespace lmsv {

// ---------------------------------------------------------------------------
// Hermite bookkeeping and normalizing sequences
// ---------------------------------------------------------------------------

// Probabilists' Hermite polynomial H_q(x): H_0 = 1, H_1 = x,
// H_{q+1} = x H_q − q H_{q−1}.
double hermite_polynomial(int q, double x) noexcept;

double factorial(int m) noexcept;

// c_m = 2·m! / ((1 − Dm)(2 − Dm)); requires mD < 1.
double hermite_constant(int m, double memory);

// d_{n,m} = sqrt(Var Σ_{j≤n} H_m(Y_j)) for unit-variance FGN, via the Toeplitz
// form m!(n + 2 Σ_{k<n} (n−k) γ(k)^m).
double dnm_exact(double hurst, int m, std::size_t n);

// sqrt(c_m n^{2−mD} L^m) with L = H(2H−1); requires mD < 1.
double dnm_asymptotic(double hurst, int m, std::size_t n);

enum class ProblemKind { MeanCusum, VarCusum, TailCusum, MeanWilcoxonPareto, VarWilcoxonPareto };

enum class Regime {
  ShortMemory,  // E(ψ(X₁)|F₀) = 0: √n normalization, Brownian limit scaled by `scale`
  LongMemory,   // d_{n,m} normalization, limit (|J|/m!)·Z_m
};

struct HermiteSetup {
  int m = 1;
  double memory = 1.0;  // D
  double hurst = 0.5;
  double coefficient = 0.0;  // J (J_m(Ψ) or the Wilcoxon integral factor)
  Regime regime = Regime::LongMemory;
  double scale = 0.0;  // short-memory σ with σ² = E ψ²(X₁) = Var(ε₁)·E exp(2Y₁)

  // Multiplier of the limit functional: |J|/m! or σ.
  double limit_scale() const noexcept;
};

// Hermite rank and coefficient for the problems simulated with σ(y) = exp(y).
// The tail problem is stated for ψ(x) = log|x|, for which J₁(Ψ) = 1.
HermiteSetup hermite_rank_and_coeff(ProblemKind problem, const NoiseSpec& noise, double hurst);

// ---------------------------------------------------------------------------
// Wilcoxon limit factor |∫ J₁(Ψ_x∘σ) dF_{ψ(X₁)}(x)| for centered Pareto noise
// ---------------------------------------------------------------------------

enum class WilcoxonProblem { MeanPareto, VarPareto };

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadratureResult partial)
      : std::runtime_error(what), partial_(partial) {}
  const QuadratureResult& partial() const noexcept { return partial_; }

 private:
  QuadratureResult partial_;
};

// Two-dimensional adaptive Gauss-Kronrod evaluation in the variables
// v = log|u − μ| (inner) and s = log|x| (outer), where u is the uncentered
// Pareto(α) variate and μ = α/(α−1).
QuadratureResult wilcoxon_limit_factor(WilcoxonProblem problem, double alpha,
                                       double relative_tolerance = 1e-4);

// ---------------------------------------------------------------------------
// Limit processes and functionals
// ---------------------------------------------------------------------------

// Paths t ↦ d_{N,m}^{-1} Σ_{j ≤ ⌊Nt⌋} H_m(Y_j) on the grid t = i/N, i = 0 … N.
class HermitePathGenerator {
 public:
  HermitePathGenerator(double hurst, int m, std::size_t path_length);
  ~HermitePathGenerator();
  HermitePathGenerator(HermitePathGenerator&&) noexcept;

  std::size_t path_length() const noexcept { return length_; }
  // Writes N+1 values (the first is 0). Thread-safe.
  void sample(const RngStream& stream, std::span<double> out) const;

 private:
  struct Impl;
  std::size_t length_;
  int m_;
  double norm_;
  std::unique_ptr<Impl> impl_;
};

struct HermitePathEnsemble {
  std::size_t path_length = 0;
  std::size_t path_count = 0;
  std::vector<double> values;  // path_count rows of path_length + 1

  std::span<const double> path(std::size_t i) const {
    return {values.data() + i * (path_length + 1), path_length + 1};
  }
};

// Path i is drawn from stream.child(i).
HermitePathEnsemble simulate_hermite_paths(double hurst, int m, std::size_t path_length,
                                           std::size_t path_count, const RngStream& stream);

// sup_t |Z(t) − t Z(1)| over the grid.
double bridge_sup(std::span<const double> path);

// sup_{t ∈ [τ₁,τ₂]} |Z(t) − tZ(1)| / {∫₀^t V²(r;0,t)dr + ∫_t^1 V²(r;t,1)dr}^{1/2},
// trapezoid rule on the grid, O(N) per path via prefix sums.
double sn_ratio(std::span<const double> path, TrimSpec trim);

// Kolmogorov distribution of sup|B(t) − tB(1)|.
double kolmogorov_cdf(double x) noexcept;
double kolmogorov_quantile(double p);

// ---------------------------------------------------------------------------
// Critical-value tables
// ---------------------------------------------------------------------------

enum class LimitFamily { CusumBridgeSup, SnRatio };

std::string_view to_string(LimitFamily f) noexcept;
LimitFamily parse_limit_family(std::string_view s);

struct CriticalValueBudget {
  std::size_t path_count = 10000;
  std::size_t path_length = 2048;
  std::uint64_t seed = 20170401;
};

struct CriticalValueTable {
  static constexpr int kFormatVersion = 1;

  LimitFamily family = LimitFamily::CusumBridgeSup;
  int m = 1;
  double hurst = 0.5;
  TrimSpec trim;
  std::map<double, double> quantiles;  // level → value
  int version = kFormatVersion;
  std::string source = "simulation";   // or "kolmogorov-series"
  std::size_t path_count = 0;
  std::size_t path_length = 0;
  std::uint64_t seed = 0;

  // Quantile at `level` (must be one of the stored levels).
  double quantile(double level) const;
  // Identifies (family, m, H, trim); the budget is metadata.
  std::string key() const;
};

std::string table_key(LimitFamily family, int m, double hurst, const TrimSpec& trim);

// Default levels {0.90, 0.95, 0.99} are always included.
std::vector<double> standard_levels(std::span<const double> extra = {});

CriticalValueTable critical_values(LimitFamily family, int m, double hurst, TrimSpec trim,
                                   std::span<const double> levels,
                                   const CriticalValueBudget& budget = {});

// Exact Brownian-bridge table (m = 1, H = 1/2) from the Kolmogorov series.
CriticalValueTable kolmogorov_table(std::span<const double> levels);

// Type-7 (linear interpolation) empirical quantile of sorted data.
double empirical_quantile(std::span<const double> sorted, double level);

std::string to_json(const CriticalValueTable& t);
// Rejects documents whose format version differs from kFormatVersion.
CriticalValueTable table_from_json(const std::string& text);
void save_table(const CriticalValueTable& t, const std::string& path);
CriticalValueTable load_table(const std::string& path);

}  // namespace lmsv
