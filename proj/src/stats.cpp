#include "lmsv/stats.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace lmsv {

namespace {

// Neumaier compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) noexcept {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      carry += (sum - t) + v;
    else
      carry += (v - t) + sum;
    sum = t;
  }
  double value() const noexcept { return sum + carry; }
};

void require_length(std::span<const double> xs, const char* who) {
  if (xs.size() < 2) throw std::invalid_argument(std::string(who) + ": need at least 2 observations");
}

Profile finish_profile(std::vector<double> values) {
  Profile p;
  p.values = std::move(values);
  p.sup = p.values.front();
  p.argmax_k = 1;
  for (std::size_t k = 1; k < p.values.size(); ++k) {
    if (p.values[k] > p.sup) {
      p.sup = p.values[k];
      p.argmax_k = k + 1;
    }
  }
  return p;
}

// O(n²) evaluation of the Wilcoxon profile, valid with ties.
std::vector<double> wilcoxon_double_sum(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<double> w(n);
  // Twice the signed sum, kept integral: Σ (2·1{v_i ≤ v_j} − 1).
  std::int64_t twice = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double pivot = v[k - 1];
    // Move observation k from the second block into the first.
    for (std::size_t j = k; j < n; ++j) twice += (pivot <= v[j]) ? 1 : -1;
    for (std::size_t i = 0; i + 1 < k; ++i) twice -= (v[i] <= pivot) ? 1 : -1;
    w[k - 1] = std::abs(static_cast<double>(twice)) / 2.0;
  }
  return w;
}

}  // namespace

double apply(Transform psi, double x) {
  switch (psi) {
    case Transform::Identity: return x;
    case Transform::Square: return x * x;
    case Transform::LogAbs:
      if (x == 0.0) throw std::domain_error("log|x| transform applied to a zero observation");
      return std::log(std::abs(x));
    case Transform::LogSquare:
      if (x == 0.0) throw std::domain_error("log(x^2) transform applied to a zero observation");
      return 2.0 * std::log(std::abs(x));
  }
  return x;
}

std::vector<double> apply(Transform psi, std::span<const double> xs) {
  std::vector<double> out(xs.size());
  std::transform(xs.begin(), xs.end(), out.begin(), [psi](double x) { return apply(psi, x); });
  return out;
}

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::Cusum: return "cusum";
    case Family::Wilcoxon: return "wilcoxon";
    case Family::SnCusum: return "sn_cusum";
    case Family::SnWilcoxon: return "sn_wilcoxon";
  }
  return "?";
}

std::string_view to_string(Transform t) noexcept {
  switch (t) {
    case Transform::Identity: return "identity";
    case Transform::Square: return "square";
    case Transform::LogAbs: return "log_abs";
    case Transform::LogSquare: return "log_square";
  }
  return "?";
}

namespace {
std::string normalize_token(std::string_view s) {
  std::string out(s);
  std::replace(out.begin(), out.end(), '-', '_');
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}
}  // namespace

Family parse_family(std::string_view s) {
  const std::string t = normalize_token(s);
  for (Family f : {Family::Cusum, Family::Wilcoxon, Family::SnCusum, Family::SnWilcoxon})
    if (t == to_string(f)) return f;
  throw std::invalid_argument("unknown test family '" + std::string(s) + "'");
}

Transform parse_transform(std::string_view s) {
  const std::string t = normalize_token(s);
  for (Transform p :
       {Transform::Identity, Transform::Square, Transform::LogAbs, Transform::LogSquare})
    if (t == to_string(p)) return p;
  throw std::invalid_argument("unknown transform '" + std::string(s) + "'");
}

void TrimSpec::validate() const {
  if (!(tau1 > 0.0 && tau1 < tau2 && tau2 < 1.0))
    throw std::invalid_argument("trimming requires 0 < tau1 < tau2 < 1");
}

std::size_t TrimSpec::first(std::size_t n) const noexcept {
  return static_cast<std::size_t>(std::floor(static_cast<double>(n) * tau1 + 1e-9));
}

std::size_t TrimSpec::last(std::size_t n) const noexcept {
  const auto k = static_cast<std::size_t>(std::floor(static_cast<double>(n) * tau2 + 1e-9));
  return std::min(k, n - 1);
}

Profile cusum(std::span<const double> xs, Transform psi) {
  require_length(xs, "cusum");
  const std::vector<double> xi = apply(psi, xs);
  const std::size_t n = xi.size();
  std::vector<double> prefix(n);
  CompensatedSum acc;
  for (std::size_t j = 0; j < n; ++j) {
    acc.add(xi[j]);
    prefix[j] = acc.value();
  }
  const double total = prefix[n - 1];
  std::vector<double> values(n);
  for (std::size_t k = 1; k <= n; ++k)
    values[k - 1] = std::abs(prefix[k - 1] - static_cast<double>(k) / static_cast<double>(n) * total);
  return finish_profile(std::move(values));
}

bool has_ties(std::span<const double> xs) {
  std::vector<double> s(xs.begin(), xs.end());
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) != s.end();
}

std::vector<double> ranks(std::span<const double> xs) {
  const std::size_t n = xs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> r(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
    // Σ_l 1{x_l ≤ x} counts the whole tie group.
    for (std::size_t l = i; l <= j; ++l) r[order[l]] = static_cast<double>(j + 1);
    i = j + 1;
  }
  return r;
}

Profile wilcoxon(std::span<const double> xs, Transform psi) {
  require_length(xs, "wilcoxon");
  const std::vector<double> v = apply(psi, xs);
  const std::size_t n = v.size();
  if (has_ties(v)) return finish_profile(wilcoxon_double_sum(v));

  const std::vector<double> r = ranks(v);
  std::vector<double> values(n);
  // 2·Σ_{i≤k} R_i − k(n+1) is an exact integer.
  std::int64_t twice_sum = 0;
  const auto np1 = static_cast<std::int64_t>(n + 1);
  for (std::size_t k = 1; k <= n; ++k) {
    twice_sum += 2 * static_cast<std::int64_t>(r[k - 1]);
    const std::int64_t d = twice_sum - static_cast<std::int64_t>(k) * np1;
    values[k - 1] = std::abs(static_cast<double>(d)) / 2.0;
  }
  return finish_profile(std::move(values));
}

TestOutcome& TestOutcome::decide(double cv) noexcept {
  critical_value = cv;
  reject = statistic > cv;
  return *this;
}

TestOutcome normalized_outcome(Family family, const Profile& profile, double normalization) {
  if (!(normalization > 0.0) || !std::isfinite(normalization))
    throw std::invalid_argument("normalization must be positive and finite");
  TestOutcome out;
  out.family = family;
  out.normalization = normalization;
  out.statistic = profile.sup / normalization;
  out.argmax_k = profile.argmax_k;
  return out;
}

TestOutcome sn_statistic(std::span<const double> xi_raw, TrimSpec trim, Family family) {
  require_length(xi_raw, "self-normalized statistic");
  trim.validate();
  const std::size_t n = xi_raw.size();
  const std::size_t k_lo = trim.first(n);
  const std::size_t k_hi = trim.last(n);
  if (k_lo < 1 || k_lo > k_hi)
    throw std::invalid_argument("self-normalized statistic: floor(n*tau1) must be >= 1");

  // The statistic is invariant under ξ → ξ + b; centering limits cancellation.
  CompensatedSum mean_acc;
  for (double v : xi_raw) mean_acc.add(v);
  const double mean = mean_acc.value() / static_cast<double>(n);

  std::vector<double> prefix(n + 1, 0.0);  // prefix[t] = Σ_{h≤t} ξ_h
  CompensatedSum acc;
  for (std::size_t t = 1; t <= n; ++t) {
    acc.add(xi_raw[t - 1] - mean);
    prefix[t] = acc.value();
  }
  const double total = prefix[n];
  const double dn = static_cast<double>(n);

  TestOutcome out;
  out.family = family;
  out.normalization = 1.0;
  out.statistic = -1.0;
  for (std::size_t k = k_lo; k <= k_hi; ++k) {
    const double pk = prefix[k];
    const double numerator = pk - static_cast<double>(k) / dn * total;
    const double m1 = pk / static_cast<double>(k);
    const double m2 = (total - pk) / static_cast<double>(n - k);

    CompensatedSum ss;
    for (std::size_t t = 1; t <= k; ++t) {
      const double s = prefix[t] - static_cast<double>(t) * m1;
      ss.add(s * s);
    }
    for (std::size_t t = k + 1; t <= n; ++t) {
      const double s = (prefix[t] - pk) - static_cast<double>(t - k) * m2;
      ss.add(s * s);
    }
    const double denom2 = ss.value() / dn;
    if (!(denom2 > 0.0)) {
      out.statistic = std::numeric_limits<double>::infinity();
      out.argmax_k = k;
      out.degenerate = true;
      break;
    }
    const double g = std::abs(numerator) / std::sqrt(denom2);
    if (g > out.statistic) {
      out.statistic = g;
      out.argmax_k = k;
    }
  }
  return out;
}

TestOutcome sn_cusum(std::span<const double> xs, Transform psi, TrimSpec trim) {
  require_length(xs, "sn_cusum");
  return sn_statistic(apply(psi, xs), trim, Family::SnCusum);
}

TestOutcome sn_wilcoxon(std::span<const double> xs, Transform psi, TrimSpec trim) {
  require_length(xs, "sn_wilcoxon");
  return sn_statistic(ranks(apply(psi, xs)), trim, Family::SnWilcoxon);
}

void write_profile_csv(std::ostream& os, const Profile& p) {
  os.precision(17);
  os << "k,value\n";
  for (std::size_t k = 1; k <= p.values.size(); ++k) os << k << ',' << p.values[k - 1] << '\n';
}

}  // namespace lmsv
