#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lmsv {

// ψ selecting the change-point problem: mean, variance or tail index.
enum class Transform { Identity, Square, LogAbs, LogSquare };

double apply(Transform psi, double x);
std::vector<double> apply(Transform psi, std::span<const double> xs);

enum class Family { Cusum, Wilcoxon, SnCusum, SnWilcoxon };

std::string_view to_string(Family f) noexcept;
std::string_view to_string(Transform t) noexcept;
Family parse_family(std::string_view s);
Transform parse_transform(std::string_view s);

// Trimming of the cut points searched by the self-normalized statistics.
struct TrimSpec {
  double tau1 = 0.15;
  double tau2 = 0.85;

  void validate() const;
  std::size_t first(std::size_t n) const noexcept;  // ⌊nτ₁⌋
  std::size_t last(std::size_t n) const noexcept;   // ⌊nτ₂⌋, capped at n−1

  friend bool operator==(const TrimSpec&, const TrimSpec&) = default;
};

// Profile over cut points k = 1 … n (profile[k-1]) and its supremum.
struct Profile {
  double sup = 0.0;
  std::size_t argmax_k = 1;  // smallest maximizing k
  std::vector<double> values;
};

// C_n(k) = |Σ_{j≤k} ψ(X_j) − (k/n) Σ_{j≤n} ψ(X_j)|, one prefix-sum pass.
Profile cusum(std::span<const double> xs, Transform psi = Transform::Identity);

// W_n(k) = |Σ_{i≤k} Σ_{j>k} (1{ψ(X_i) ≤ ψ(X_j)} − ½)|. Tie-free data use the
// rank identity |Σ_{i≤k} R_i − k(n+1)/2| in O(n log n); duplicated values
// fall back to the O(n²) double sum.
Profile wilcoxon(std::span<const double> xs, Transform psi = Transform::Identity);

// R_i = Σ_j 1{x_j ≤ x_i}; ties receive the largest rank of their group.
std::vector<double> ranks(std::span<const double> xs);
bool has_ties(std::span<const double> xs);

struct TestOutcome {
  Family family = Family::Cusum;
  double statistic = 0.0;       // normalized value compared to the critical value
  double normalization = 1.0;   // divisor applied to the raw supremum
  std::size_t argmax_k = 1;
  double critical_value = std::numeric_limits<double>::infinity();
  bool reject = false;
  bool degenerate = false;      // a self-normalizer vanished

  // Fixes the critical value and the decision statistic > critical value.
  TestOutcome& decide(double cv) noexcept;
};

// T_n(τ₁,τ₂) = max over ⌊nτ₁⌋ ≤ k ≤ ⌊nτ₂⌋ of |G_n(k)|. O(n) work per cut point
// with compensated sums of S_t². Not yet decided (critical value +∞).
TestOutcome sn_cusum(std::span<const double> xs, Transform psi = Transform::Identity,
                     TrimSpec trim = {});

// The same statistic with ψ(X_h) replaced by its rank.
TestOutcome sn_wilcoxon(std::span<const double> xs, Transform psi = Transform::Identity,
                        TrimSpec trim = {});

// Normalized non-self-normalized outcome: statistic = profile.sup / normalization.
TestOutcome normalized_outcome(Family family, const Profile& profile, double normalization);

// Self-normalized kernel on an already transformed sequence ξ.
TestOutcome sn_statistic(std::span<const double> xi, TrimSpec trim, Family family);

void write_profile_csv(std::ostream& os, const Profile& p);

}  // namespace lmsv
