// Command-line front end: simulate, test, critvals, experiment, compare.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lmsv/asymp.hpp"
#include "lmsv/mc.hpp"
#include "lmsv/series.hpp"
#include "lmsv/stats.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitComputation = 2;
constexpr int kExitFlagged = 3;

// Thrown for flag combinations rejected before any computation starts.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SimulateFlags {
  std::size_t n = 0;
  double hurst = 0.5;
  std::string noise = "normal";
  double alpha = 0.0;
  double scale = 1.0;
  std::string sigma = "exp";
  std::string change = "none";
  double h = 0.0;
  double tau = 0.5;
  std::uint64_t seed = 1;
  bool latent = false;
  std::string output;
};

struct TestFlags {
  std::string input;
  std::string column = "x";
  std::string family;
  std::string psi = "identity";
  double hurst = 0.5;
  std::string noise = "normal";
  double alpha = 0.0;
  double level = 0.05;
  double tau1 = 0.15;
  double tau2 = 0.85;
  std::string critvals_dir;
  bool no_build = false;
  std::size_t paths = lmsv::CriticalValueBudget{}.path_count;
  std::size_t path_length = lmsv::CriticalValueBudget{}.path_length;
  std::uint64_t critvals_seed = lmsv::CriticalValueBudget{}.seed;
};

struct CritvalsFlags {
  std::string family = "bridge_sup";
  int m = 1;
  double hurst = 0.5;
  double tau1 = 0.15;
  double tau2 = 0.85;
  std::vector<double> levels;
  std::size_t paths = lmsv::CriticalValueBudget{}.path_count;
  std::size_t path_length = lmsv::CriticalValueBudget{}.path_length;
  std::uint64_t seed = lmsv::CriticalValueBudget{}.seed;
  bool exact = false;
  std::string output;
};

struct ExperimentFlags {
  std::string config;
  std::string output;
  std::size_t replications = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string critvals_dir;
  unsigned workers = 0;
};

struct CompareFlags {
  std::string report;
  std::string reference;
  double threshold = 3.0;
  std::size_t reference_reps = 5000;
};

// `pareto` names the centered law except for the tail problem, which needs
// the positive (uncentered) variable.
lmsv::NoiseSpec noise_from_flags(const std::string& kind, double alpha, double scale,
                                 bool tail_problem) {
  if (kind == "normal") return lmsv::NoiseSpec::standard_normal();
  if (kind == "pareto")
    return tail_problem ? lmsv::NoiseSpec::pareto(alpha, scale)
                        : lmsv::NoiseSpec::centered_pareto(alpha, scale);
  throw UsageError("unknown noise '" + kind + "'");
}

lmsv::ChangeSpec change_from_flags(const std::string& kind, double h, double tau) {
  if (kind == "none") return lmsv::ChangeSpec::none();
  return lmsv::change_for(lmsv::parse_problem(kind), h, tau);
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot write " + path);
  return file;
}

int run_simulate(const SimulateFlags& f) {
  lmsv::SeriesSpec spec;
  try {
    if (f.sigma != "exp") throw UsageError("only --sigma exp is supported");
    const lmsv::NoiseSpec noise = noise_from_flags(f.noise, f.alpha, f.scale, f.change == "tail");
    spec = lmsv::SeriesSpec::make(f.n, f.hurst, noise, change_from_flags(f.change, f.h, f.tau));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::ofstream file;
  std::ostream& os = open_output(f.output, file);
  const lmsv::RngStream stream{f.seed, 0};
  if (f.latent)
    lmsv::write_components_csv(os, lmsv::simulate_components(spec, stream));
  else
    lmsv::write_series_csv(os, lmsv::simulate_series(spec, stream));
  return kExitOk;
}

std::vector<double> read_column(const std::string& path, const std::string& column) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path);
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error(path + " is empty");
  // The first line is a header unless it parses as a number.
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  std::size_t col = 0;
  std::vector<double> xs;
  char* end = nullptr;
  std::strtod(header.empty() ? "" : header[0].c_str(), &end);
  const bool numeric_first = !header.empty() && end && *end == '\0' && !header[0].empty();
  if (numeric_first) {
    xs.push_back(std::stod(header[0]));
  } else if (header.size() > 1) {
    const auto it = std::find(header.begin(), header.end(), column);
    if (it == header.end()) throw std::runtime_error(path + " has no column '" + column + "'");
    col = static_cast<std::size_t>(it - header.begin());
  }
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::stringstream ss(line);
    std::string cell;
    for (std::size_t c = 0; c <= col; ++c)
      if (!std::getline(ss, cell, ',')) throw std::runtime_error(path + ": short line " + std::to_string(line_no));
    try {
      xs.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw std::runtime_error(path + ": bad number on line " + std::to_string(line_no));
    }
  }
  return xs;
}

nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

int run_test(const TestFlags& f) {
  lmsv::TestPlan plan;
  lmsv::TrimSpec trim{f.tau1, f.tau2};
  lmsv::ProblemType problem;
  try {
    const lmsv::Family family = lmsv::parse_family(f.family);
    const lmsv::Transform psi = lmsv::parse_transform(f.psi);
    switch (psi) {
      case lmsv::Transform::Identity: problem = lmsv::ProblemType::Mean; break;
      case lmsv::Transform::Square: problem = lmsv::ProblemType::Variance; break;
      case lmsv::Transform::LogAbs: problem = lmsv::ProblemType::Tail; break;
      default: throw UsageError("--psi must be identity, square or log_abs");
    }
    trim.validate();
    if (!(f.level > 0.0 && f.level < 1.0)) throw UsageError("--level must lie in (0, 1)");
    const lmsv::NoiseSpec noise =
        noise_from_flags(f.noise, f.alpha, 1.0, problem == lmsv::ProblemType::Tail);
    // Validate the normalization inputs before reading data.
    plan = lmsv::plan_test(problem, family, noise, f.hurst, 2);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const std::vector<double> xs = read_column(f.input, f.column);
  const lmsv::NoiseSpec noise =
      noise_from_flags(f.noise, f.alpha, 1.0, problem == lmsv::ProblemType::Tail);
  plan = lmsv::plan_test(problem, plan.family, noise, f.hurst, xs.size());

  lmsv::CriticalValueSource source;
  source.cache_dir = f.critvals_dir;
  source.build_missing = !f.no_build;
  source.budget = {f.paths, f.path_length, f.critvals_seed};
  const lmsv::CriticalValueTable table = lmsv::resolve_table(plan.table, trim, f.level, source);
  const lmsv::TestOutcome out = lmsv::run_test(plan, xs, trim, table.quantile(1.0 - f.level));

  const nlohmann::json j = {{"family", std::string(lmsv::to_string(out.family))},
                            {"psi", std::string(lmsv::to_string(plan.psi))},
                            {"n", xs.size()},
                            {"statistic", number_or_null(out.statistic)},
                            {"normalization", out.normalization},
                            {"critical_value", out.critical_value},
                            {"level", f.level},
                            {"reject", out.reject},
                            {"argmax_k", out.argmax_k},
                            {"degenerate", out.degenerate},
                            {"table", plan.table.key(trim)}};
  std::cout << j.dump() << '\n';
  return kExitOk;
}

int run_critvals(const CritvalsFlags& f) {
  lmsv::CriticalValueTable t;
  lmsv::LimitFamily family;
  const lmsv::TrimSpec trim{f.tau1, f.tau2};
  try {
    family = lmsv::parse_limit_family(f.family);
    trim.validate();
    for (double l : f.levels)
      if (!(l > 0.0 && l < 1.0)) throw UsageError("--levels must lie in (0, 1)");
    if (f.exact && !(family == lmsv::LimitFamily::CusumBridgeSup && f.m == 1 && f.hurst == 0.5))
      throw UsageError("--exact applies to bridge_sup with m = 1 and H = 0.5 only");
    if (f.m >= 2 && !(f.m * 2.0 * (1.0 - f.hurst) < 1.0))
      throw UsageError("m*D < 1 is required for m >= 2");
    if (f.paths < 10 || f.path_length < 2) throw UsageError("budget too small");
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (f.exact)
    t = lmsv::kolmogorov_table(f.levels);
  else
    t = lmsv::critical_values(family, f.m, f.hurst, trim, f.levels, {f.paths, f.path_length, f.seed});
  std::ofstream file;
  open_output(f.output, file) << lmsv::to_json(t) << '\n';
  return kExitOk;
}

std::string sidecar_path(const std::string& csv) {
  std::filesystem::path p(csv);
  p.replace_extension(".meta.json");
  return p.string();
}

int run_experiment(const ExperimentFlags& f) {
  lmsv::ExperimentConfig cfg;
  try {
    cfg = lmsv::load_experiment_config(f.config);
    if (f.replications) cfg.replications = f.replications;
    if (f.seed_set) cfg.seed = f.seed;
    if (!f.critvals_dir.empty()) cfg.critical_values.cache_dir = f.critvals_dir;
    if (f.workers) cfg.workers = f.workers;
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::string out = f.output.empty() ? cfg.name + ".csv" : f.output;

  const lmsv::ExperimentReport report = lmsv::run_experiment(cfg);
  {
    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot write " + out);
    lmsv::write_report_csv(os, report);
  }
  {
    std::ofstream os(sidecar_path(out));
    if (!os) throw std::runtime_error("cannot write " + sidecar_path(out));
    os << lmsv::report_metadata_json(report) << '\n';
  }
  std::cout << cfg.name << ": " << report.rows.size() << " rows, " << cfg.families.size()
            << " families, " << cfg.replications << " replications, " << report.wall_seconds
            << " s -> " << out << '\n';
  return kExitOk;
}

int run_compare(const CompareFlags& f) {
  const lmsv::RateTable local = lmsv::load_rate_csv(f.report, f.reference_reps);
  const lmsv::RateTable reference = lmsv::load_rate_csv(f.reference, f.reference_reps);
  const lmsv::ComparisonSummary s = lmsv::compare_to_reference(local, reference, f.threshold);
  std::cout.setf(std::ios::fixed);
  std::cout.precision(3);
  for (const lmsv::CellComparison& c : s.cells)
    if (c.flagged)
      std::cout << "FLAGGED " << c.point.describe() << ' ' << lmsv::to_string(c.family)
                << ": local " << c.local << " reference " << c.reference << " z " << c.z << '\n';
  std::cout << s.cells.size() << " cells compared, " << s.flagged << " flagged, max |z| "
            << s.max_abs_z << '\n';
  return s.flagged == 0 ? kExitOk : kExitFlagged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Change-point tests for long-memory stochastic volatility series"};
  app.require_subcommand(1);
  // "--h" is the change height, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");

  SimulateFlags sim;
  auto* s = app.add_subcommand("simulate", "Simulate X_j = exp(Y_j) eps_j with an optional change");
  s->add_option("--n", sim.n, "Series length")->required()->check(CLI::PositiveNumber);
  s->add_option("--hurst", sim.hurst, "Hurst parameter of Y")->required();
  s->add_option("--noise", sim.noise, "normal or pareto")->check(CLI::IsMember({"normal", "pareto"}));
  s->add_option("--alpha", sim.alpha, "Pareto tail index");
  s->add_option("--scale", sim.scale, "Pareto scale");
  s->add_option("--sigma", sim.sigma, "Volatility function (exp)");
  s->add_option("--change", sim.change, "none, mean, variance or tail")
      ->check(CLI::IsMember({"none", "mean", "variance", "tail"}));
  s->add_option("--h", sim.h, "Change height");
  s->add_option("--tau", sim.tau, "Change location in (0, 1)");
  s->add_option("--seed", sim.seed, "Random seed");
  s->add_flag("--latent", sim.latent, "Write y,eps,x instead of x");
  s->add_option("-o,--output", sim.output, "Output CSV (default stdout)");

  TestFlags test;
  auto* t = app.add_subcommand("test", "Run one change-point test on a CSV column");
  t->add_option("--input", test.input, "Input CSV")->required();
  t->add_option("--column", test.column, "Column name when the CSV has several");
  t->add_option("--family", test.family, "cusum, wilcoxon, sn_cusum or sn_wilcoxon")->required();
  t->add_option("--psi", test.psi, "identity, square or log_abs");
  t->add_option("--hurst", test.hurst, "Hurst parameter used for normalization");
  t->add_option("--noise", test.noise, "normal or pareto")->check(CLI::IsMember({"normal", "pareto"}));
  t->add_option("--alpha", test.alpha, "Pareto tail index used for normalization");
  t->add_option("--level", test.level, "Significance level");
  t->add_option("--tau1", test.tau1, "Lower trimming for self-normalized tests");
  t->add_option("--tau2", test.tau2, "Upper trimming for self-normalized tests");
  t->add_option("--critvals-dir", test.critvals_dir, "Critical value cache directory");
  t->add_flag("--no-build", test.no_build, "Fail instead of simulating a missing table");
  t->add_option("--paths", test.paths, "Paths for a simulated table");
  t->add_option("--path-length", test.path_length, "Grid size for a simulated table");
  t->add_option("--critvals-seed", test.critvals_seed, "Seed for a simulated table");

  CritvalsFlags cv;
  auto* c = app.add_subcommand("critvals", "Simulate a critical value table (JSON)");
  c->add_option("--family", cv.family, "bridge_sup or sn_ratio");
  c->add_option("--m", cv.m, "Hermite rank")->check(CLI::Range(1, 8));
  c->add_option("--hurst", cv.hurst, "Hurst parameter");
  c->add_option("--tau1", cv.tau1, "Lower trimming");
  c->add_option("--tau2", cv.tau2, "Upper trimming");
  c->add_option("--levels", cv.levels, "Extra quantile levels");
  c->add_option("--paths", cv.paths, "Number of paths");
  c->add_option("--path-length", cv.path_length, "Grid size per path");
  c->add_option("--seed", cv.seed, "Random seed");
  c->add_flag("--exact", cv.exact, "Kolmogorov series instead of simulation");
  c->add_option("-o,--output", cv.output, "Output JSON (default stdout)");

  ExperimentFlags ex;
  auto* e = app.add_subcommand("experiment", "Run a rejection-rate experiment from a JSON config");
  e->add_option("--config", ex.config, "Experiment config")->required();
  e->add_option("-o,--output", ex.output, "Report CSV (sidecar .meta.json next to it)");
  e->add_option("--replications", ex.replications, "Override the replication count");
  auto* seed_opt = e->add_option("--seed", ex.seed, "Override the seed");
  e->add_option("--critvals-dir", ex.critvals_dir, "Override the critical value cache");
  e->add_option("--workers", ex.workers, "Worker threads (0: all cores)");

  CompareFlags cmp;
  auto* k = app.add_subcommand("compare", "Compare a report CSV with a reference table");
  k->add_option("--report", cmp.report, "Local report CSV")->required();
  k->add_option("--reference", cmp.reference, "Reference CSV")->required();
  k->add_option("--threshold", cmp.threshold, "Flag cells with |z| above this");
  k->add_option("--reference-reps", cmp.reference_reps, "Replications behind rates without a reps column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  ex.seed_set = seed_opt->count() > 0;

  try {
    if (s->parsed()) return run_simulate(sim);
    if (t->parsed()) return run_test(test);
    if (c->parsed()) return run_critvals(cv);
    if (e->parsed()) return run_experiment(ex);
    if (k->parsed()) return run_compare(cmp);
  } catch (const UsageError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitComputation;
  }
  return kExitUsage;
}
