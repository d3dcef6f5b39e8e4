#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lmsv/asymp.hpp"
#include "lmsv/dist.hpp"
#include "lmsv/series.hpp"
#include "lmsv/stats.hpp"

namespace lmsv {

// Which parameter changes: mean (ψ = x), variance (ψ = x²) or tail index
// (ψ = log|x|).
enum class ProblemType { Mean, Variance, Tail };

std::string_view to_string(ProblemType p) noexcept;
ProblemType parse_problem(std::string_view s);
Transform transform_for(ProblemType p) noexcept;
ChangeSpec change_for(ProblemType p, double h, double tau) noexcept;

// Limit law a decision is calibrated against.
struct TableRequest {
  LimitFamily family = LimitFamily::CusumBridgeSup;
  int m = 1;
  double hurst = 0.5;
  bool analytic = false;  // Kolmogorov series instead of simulation

  std::string key(const TrimSpec& trim) const;
};

// Everything needed to turn a raw series into a decision, in known-parameter
// mode (true H, α and σ).
struct TestPlan {
  Family family = Family::Cusum;
  Transform psi = Transform::Identity;
  double normalization = 1.0;  // 1 for the self-normalized statistics
  TableRequest table;
};

TestPlan plan_test(ProblemType problem, Family family, const NoiseSpec& noise, double hurst,
                   std::size_t n);

// Statistic and decision for one series.
TestOutcome run_test(const TestPlan& plan, std::span<const double> xs, const TrimSpec& trim,
                     double critical_value);

struct CriticalValueSource {
  std::string cache_dir;  // empty: no cache
  CriticalValueBudget budget;
  bool build_missing = true;
};

class MissingTableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Loads `<cache_dir>/<key>.json`, or simulates (and caches) the table when
// allowed. The table always carries the quantile at 1 − level.
CriticalValueTable resolve_table(const TableRequest& request, const TrimSpec& trim, double level,
                                 const CriticalValueSource& source);

struct ExperimentConfig {
  std::string name = "experiment";
  ProblemType change = ProblemType::Mean;
  NoiseKind noise = NoiseKind::StandardNormal;
  std::vector<double> alphas;  // empty for normal noise
  std::vector<double> hursts;
  std::vector<std::size_t> ns;
  std::vector<double> hs;
  std::vector<double> taus{0.5};
  std::vector<Family> families;
  double level = 0.05;
  std::size_t replications = 1000;
  std::uint64_t seed = 1;
  TrimSpec trim;
  CriticalValueSource critical_values;
  unsigned workers = 0;  // 0: hardware concurrency

  NoiseSpec noise_at(double alpha) const;
  void validate() const;
};

ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg);
ExperimentConfig load_experiment_config(const std::string& path);

// Row coordinates of a report. alpha is NaN for normal innovations.
struct GridPoint {
  double hurst = 0.5;
  std::size_t n = 0;
  double alpha = 0.0;
  double tau = 0.5;
  double h = 0.0;

  bool matches(const GridPoint& o) const noexcept;
  std::string describe() const;
};

struct CellResult {
  std::size_t replications = 0;
  std::size_t rejections = 0;
  double rate = 0.0;
  double standard_error = 0.0;
};

// Rejection rates with one row per grid point and one column per family.
struct RateTable {
  std::vector<Family> families;
  std::vector<GridPoint> rows;
  std::vector<std::vector<std::optional<double>>> rates;  // [row][family]
  std::vector<std::size_t> replications;                  // per row

  std::optional<double> rate(std::size_t row, Family f) const;
  std::optional<std::size_t> find_row(const GridPoint& p) const;
};

struct TableProvenance {
  std::string key;
  int version = 0;
  std::string source;
  std::size_t path_count = 0;
  std::size_t path_length = 0;
  std::uint64_t seed = 0;
  double critical_value = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<GridPoint> rows;
  std::vector<std::vector<CellResult>> cells;  // [row][family in config order]
  std::vector<TableProvenance> tables;
  double wall_seconds = 0.0;

  RateTable rate_table() const;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

void write_report_csv(std::ostream& os, const ExperimentReport& report);
std::string report_metadata_json(const ExperimentReport& report);

// Reads report CSVs and reference tables alike: columns H, n, alpha, tau, h,
// optional reps, then one column per family (`<family>_se` columns ignored).
// Missing replication counts default to `default_replications`.
RateTable read_rate_csv(std::istream& is, std::size_t default_replications = 5000);
RateTable load_rate_csv(const std::string& path, std::size_t default_replications = 5000);

class CoordinateMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CellComparison {
  GridPoint point;
  Family family = Family::Cusum;
  double local = 0.0;
  double reference = 0.0;
  double z = 0.0;
  bool flagged = false;
};

struct ComparisonSummary {
  std::vector<CellComparison> cells;
  std::size_t flagged = 0;
  double max_abs_z = 0.0;
};

// Pooled two-proportion z per cell; every local cell needs a reference value.
ComparisonSummary compare_to_reference(const RateTable& local, const RateTable& reference,
                                       double z_threshold = 3.0);

}  // namespace lmsv
