#include "lmsv/mc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lmsv/parallel.hpp"

namespace lmsv {

using nlohmann::json;

std::string_view to_string(ProblemType p) noexcept {
  switch (p) {
    case ProblemType::Mean: return "mean";
    case ProblemType::Variance: return "variance";
    case ProblemType::Tail: return "tail";
  }
  return "?";
}

ProblemType parse_problem(std::string_view s) {
  for (ProblemType p : {ProblemType::Mean, ProblemType::Variance, ProblemType::Tail})
    if (s == to_string(p)) return p;
  throw std::invalid_argument("unknown change kind '" + std::string(s) +
                              "' (expected mean, variance or tail)");
}

Transform transform_for(ProblemType p) noexcept {
  switch (p) {
    case ProblemType::Mean: return Transform::Identity;
    case ProblemType::Variance: return Transform::Square;
    case ProblemType::Tail: return Transform::LogAbs;
  }
  return Transform::Identity;
}

ChangeSpec change_for(ProblemType p, double h, double tau) noexcept {
  switch (p) {
    case ProblemType::Mean: return ChangeSpec::mean_shift(h, tau);
    case ProblemType::Variance: return ChangeSpec::variance_scale(h, tau);
    case ProblemType::Tail: return ChangeSpec::tail_shift(h, tau);
  }
  return ChangeSpec::none();
}

std::string TableRequest::key(const TrimSpec& trim) const {
  return table_key(family, m, hurst, trim) + (analytic ? "_exact" : "");
}

// ---------------------------------------------------------------------------

TestPlan plan_test(ProblemType problem, Family family, const NoiseSpec& noise, double hurst,
                   std::size_t n) {
  if (n < 2) throw std::invalid_argument("series length must be at least 2");
  TestPlan plan;
  plan.family = family;
  plan.psi = transform_for(problem);
  plan.table.hurst = hurst;

  if (problem == ProblemType::Tail && noise.kind() != NoiseKind::Pareto)
    throw std::invalid_argument("tail problem needs (non-centered) Pareto innovations");
  if (problem != ProblemType::Tail && noise.kind() == NoiseKind::Pareto)
    throw std::invalid_argument(std::string(to_string(problem)) +
                                " problem needs centered innovations");

  const double dn = static_cast<double>(n);
  switch (family) {
    case Family::SnCusum:
    case Family::SnWilcoxon:
      plan.table.family = LimitFamily::SnRatio;
      // Mean CUSUM partial sums are short-memory: Brownian limit.
      if (problem == ProblemType::Mean && family == Family::SnCusum) plan.table.hurst = 0.5;
      return plan;
    case Family::Cusum: {
      plan.table.family = LimitFamily::CusumBridgeSup;
      if (problem == ProblemType::Mean) {
        const HermiteSetup s = hermite_rank_and_coeff(ProblemKind::MeanCusum, noise, hurst);
        plan.normalization = std::sqrt(dn) * s.limit_scale();
        plan.table.hurst = 0.5;
        plan.table.analytic = true;
        return plan;
      }
      const ProblemKind kind =
          problem == ProblemType::Variance ? ProblemKind::VarCusum : ProblemKind::TailCusum;
      const HermiteSetup s = hermite_rank_and_coeff(kind, noise, hurst);
      plan.normalization = dnm_exact(hurst, s.m, n) * s.limit_scale();
      return plan;
    }
    case Family::Wilcoxon: {
      plan.table.family = LimitFamily::CusumBridgeSup;
      if (problem == ProblemType::Tail)
        throw std::invalid_argument("the Wilcoxon test has no calibrated limit for the tail problem");
      const ProblemKind kind = problem == ProblemType::Mean ? ProblemKind::MeanWilcoxonPareto
                                                            : ProblemKind::VarWilcoxonPareto;
      const HermiteSetup s = hermite_rank_and_coeff(kind, noise, hurst);
      if (!(s.coefficient > 0.0))
        throw std::invalid_argument("Wilcoxon limit factor is zero: the normalized test degenerates");
      plan.normalization = dn * dnm_exact(hurst, s.m, n) * s.limit_scale();
      return plan;
    }
  }
  throw std::invalid_argument("unknown test family");
}

TestOutcome run_test(const TestPlan& plan, std::span<const double> xs, const TrimSpec& trim,
                     double critical_value) {
  TestOutcome out;
  switch (plan.family) {
    case Family::Cusum:
      out = normalized_outcome(plan.family, cusum(xs, plan.psi), plan.normalization);
      break;
    case Family::Wilcoxon:
      out = normalized_outcome(plan.family, wilcoxon(xs, plan.psi), plan.normalization);
      break;
    case Family::SnCusum: out = sn_cusum(xs, plan.psi, trim); break;
    case Family::SnWilcoxon: out = sn_wilcoxon(xs, plan.psi, trim); break;
  }
  return out.decide(critical_value);
}

// ---------------------------------------------------------------------------

CriticalValueTable resolve_table(const TableRequest& request, const TrimSpec& trim, double level,
                                 const CriticalValueSource& source) {
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("level must lie in (0, 1)");
  const double q = 1.0 - level;
  const std::vector<double> levels{q};
  if (request.analytic) return kolmogorov_table(levels);

  const std::string key = request.key(trim);
  std::filesystem::path file;
  if (!source.cache_dir.empty()) {
    file = std::filesystem::path(source.cache_dir) / (key + ".json");
    if (std::filesystem::exists(file)) {
      CriticalValueTable t = load_table(file.string());
      if (t.key() != key)
        throw std::runtime_error("cached table " + file.string() + " holds key " + t.key());
      if (std::any_of(t.quantiles.begin(), t.quantiles.end(),
                      [&](const auto& e) { return std::abs(e.first - q) < 1e-9; }))
        return t;
      if (!source.build_missing)
        throw MissingTableError("critical value table " + key + " lacks the quantile at level " +
                                std::to_string(q));
    }
  }
  if (!source.build_missing)
    throw MissingTableError("no critical value table for key " + key +
                            (source.cache_dir.empty() ? "" : " in " + source.cache_dir));

  CriticalValueTable t =
      critical_values(request.family, request.m, request.hurst, trim, levels, source.budget);
  if (!file.empty()) {
    std::filesystem::create_directories(file.parent_path());
    save_table(t, file.string());
  }
  return t;
}

// ---------------------------------------------------------------------------

NoiseSpec ExperimentConfig::noise_at(double alpha) const {
  switch (noise) {
    case NoiseKind::StandardNormal: return NoiseSpec::standard_normal();
    case NoiseKind::CenteredPareto: return NoiseSpec::centered_pareto(alpha);
    case NoiseKind::Pareto: return NoiseSpec::pareto(alpha);
  }
  return NoiseSpec::standard_normal();
}

void ExperimentConfig::validate() const {
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("config '" + name + "': " + msg);
  };
  if (hursts.empty() || ns.empty() || hs.empty() || taus.empty() || families.empty())
    fail("hursts, ns, hs, taus and families must be non-empty");
  if (replications < 100) fail("replications must be at least 100");
  if (!(level > 0.0 && level < 1.0)) fail("level must lie in (0, 1)");
  trim.validate();
  if (noise == NoiseKind::StandardNormal && !alphas.empty()) fail("normal noise takes no alphas");
  if (noise != NoiseKind::StandardNormal && alphas.empty()) fail("Pareto noise needs alphas");
  for (double tau : taus)
    if (!(tau > 0.0 && tau < 1.0)) fail("tau must lie in (0, 1)");
  for (std::size_t n : ns)
    if (n < 10) fail("n must be at least 10");
  for (double hurst : hursts) {
    const std::vector<double> one{std::numeric_limits<double>::quiet_NaN()};
    for (double alpha : alphas.empty() ? one : alphas) {
      const NoiseSpec ns_ = noise == NoiseKind::StandardNormal ? NoiseSpec::standard_normal()
                                                               : noise_at(alpha);
      for (double h : hs) SeriesSpec::make(ns.front(), hurst, ns_, change_for(change, h, taus.front()));
      for (Family f : families) {
        try {
          plan_test(change, f, ns_, hurst, ns.front());
        } catch (const std::exception& e) {
          fail(std::string(to_string(f)) + " at H=" + std::to_string(hurst) +
               (alphas.empty() ? "" : ", alpha=" + std::to_string(alpha)) + ": " + e.what());
        }
      }
    }
  }
}

namespace {

NoiseKind parse_noise_kind(const std::string& s) {
  if (s == "normal") return NoiseKind::StandardNormal;
  if (s == "centered_pareto") return NoiseKind::CenteredPareto;
  if (s == "pareto") return NoiseKind::Pareto;
  throw std::invalid_argument("unknown noise kind '" + s +
                              "' (expected normal, centered_pareto or pareto)");
}

std::string noise_kind_name(NoiseKind k) {
  switch (k) {
    case NoiseKind::StandardNormal: return "normal";
    case NoiseKind::CenteredPareto: return "centered_pareto";
    case NoiseKind::Pareto: return "pareto";
  }
  return "?";
}

}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
  ExperimentConfig c;
  try {
    const json j = json::parse(text);
    static const std::vector<std::string> known{
        "name",     "change", "noise",        "hursts", "ns",    "hs",   "taus", "families",
        "level",    "replications", "seed",   "trim",   "critical_values", "workers"};
    for (const auto& [k, v] : j.items())
      if (std::find(known.begin(), known.end(), k) == known.end())
        throw std::invalid_argument("unknown config field '" + k + "'");

    c.name = j.value("name", c.name);
    c.change = parse_problem(j.at("change").get<std::string>());
    const json& noise = j.at("noise");
    c.noise = parse_noise_kind(noise.at("kind").get<std::string>());
    if (noise.contains("alphas")) c.alphas = noise.at("alphas").get<std::vector<double>>();
    c.hursts = j.at("hursts").get<std::vector<double>>();
    c.ns = j.at("ns").get<std::vector<std::size_t>>();
    c.hs = j.at("hs").get<std::vector<double>>();
    if (j.contains("taus")) c.taus = j.at("taus").get<std::vector<double>>();
    c.families.clear();
    for (const auto& f : j.at("families")) c.families.push_back(parse_family(f.get<std::string>()));
    c.level = j.value("level", c.level);
    c.replications = j.value("replications", c.replications);
    c.seed = j.value("seed", c.seed);
    if (j.contains("trim")) c.trim = {j.at("trim").at(0).get<double>(), j.at("trim").at(1).get<double>()};
    c.workers = j.value("workers", c.workers);
    if (j.contains("critical_values")) {
      const json& cv = j.at("critical_values");
      c.critical_values.cache_dir = cv.value("cache_dir", std::string{});
      c.critical_values.build_missing = cv.value("build_missing", true);
      c.critical_values.budget.path_count = cv.value("path_count", c.critical_values.budget.path_count);
      c.critical_values.budget.path_length = cv.value("path_length", c.critical_values.budget.path_length);
      c.critical_values.budget.seed = cv.value("seed", c.critical_values.budget.seed);
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed experiment config: ") + e.what());
  }
  c.validate();
  return c;
}

std::string config_to_json(const ExperimentConfig& c) {
  json fams = json::array();
  for (Family f : c.families) fams.push_back(std::string(to_string(f)));
  json noise = {{"kind", noise_kind_name(c.noise)}};
  if (!c.alphas.empty()) noise["alphas"] = c.alphas;
  const json j = {{"name", c.name},
                  {"change", std::string(to_string(c.change))},
                  {"noise", noise},
                  {"hursts", c.hursts},
                  {"ns", c.ns},
                  {"hs", c.hs},
                  {"taus", c.taus},
                  {"families", fams},
                  {"level", c.level},
                  {"replications", c.replications},
                  {"seed", c.seed},
                  {"trim", {c.trim.tau1, c.trim.tau2}},
                  {"critical_values",
                   {{"cache_dir", c.critical_values.cache_dir},
                    {"build_missing", c.critical_values.build_missing},
                    {"path_count", c.critical_values.budget.path_count},
                    {"path_length", c.critical_values.budget.path_length},
                    {"seed", c.critical_values.budget.seed}}}};
  return j.dump(2);
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot read config " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return config_from_json(ss.str());
}

// ---------------------------------------------------------------------------

namespace {

bool close(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
  return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a));
}

std::string num(double v) {
  if (std::isnan(v)) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

bool GridPoint::matches(const GridPoint& o) const noexcept {
  return n == o.n && close(hurst, o.hurst) && close(alpha, o.alpha) && close(tau, o.tau) &&
         close(h, o.h);
}

std::string GridPoint::describe() const {
  return "H=" + num(hurst) + " n=" + std::to_string(n) + " alpha=" + num(alpha) + " tau=" +
         num(tau) + " h=" + num(h);
}

std::optional<double> RateTable::rate(std::size_t row, Family f) const {
  for (std::size_t k = 0; k < families.size(); ++k)
    if (families[k] == f) return rates.at(row).at(k);
  return std::nullopt;
}

std::optional<std::size_t> RateTable::find_row(const GridPoint& p) const {
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (rows[r].matches(p)) return r;
  return std::nullopt;
}

RateTable ExperimentReport::rate_table() const {
  RateTable t;
  t.families = config.families;
  t.rows = rows;
  for (const auto& row : cells) {
    std::vector<std::optional<double>> r;
    for (const CellResult& c : row) r.emplace_back(c.rate);
    t.rates.push_back(std::move(r));
    t.replications.push_back(row.empty() ? 0 : row.front().replications);
  }
  return t;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();

  const double nan = std::numeric_limits<double>::quiet_NaN();
  const std::vector<double> alphas =
      cfg.noise == NoiseKind::StandardNormal ? std::vector<double>{nan} : cfg.alphas;
  const std::size_t fam_count = cfg.families.size();

  ExperimentReport report;
  report.config = cfg;

  // Critical values for every (family, m, H) the grid touches.
  std::map<std::string, double> cv_by_key;
  auto critical_value = [&](const TableRequest& req) {
    const std::string key = req.key(cfg.trim);
    if (auto it = cv_by_key.find(key); it != cv_by_key.end()) return it->second;
    const CriticalValueTable t = resolve_table(req, cfg.trim, cfg.level, cfg.critical_values);
    const double cv = t.quantile(1.0 - cfg.level);
    report.tables.push_back({key, t.version, t.source, t.path_count, t.path_length, t.seed, cv});
    cv_by_key.emplace(key, cv);
    return cv;
  };

  for (double hurst : cfg.hursts) {
    for (std::size_t n : cfg.ns) {
      // Plans and thresholds per (alpha, family).
      std::vector<std::vector<TestPlan>> plans(alphas.size());
      std::vector<std::vector<double>> cvs(alphas.size());
      for (std::size_t a = 0; a < alphas.size(); ++a) {
        const NoiseSpec noise = cfg.noise_at(alphas[a]);
        for (Family f : cfg.families) {
          plans[a].push_back(plan_test(cfg.change, f, noise, hurst, n));
          cvs[a].push_back(critical_value(plans[a].back().table));
        }
      }

      const std::size_t row0 = report.rows.size();
      for (double alpha : alphas)
        for (double tau : cfg.taus)
          for (double h : cfg.hs) report.rows.push_back({hurst, n, alpha, tau, h});
      const std::size_t row_count = report.rows.size() - row0;
      const std::size_t cells = row_count * fam_count;

      const SeriesSimulator sim(FgnParams{hurst, n});
      std::vector<unsigned char> rejected(cfg.replications * cells, 0);
      parallel_for(
          cfg.replications,
          [&](std::size_t rep) {
            // Keyed by (n, rep) only: every H, alpha, tau and h reuses the same draws.
            const RngStream stream{cfg.seed,
                                   hash_combine(static_cast<std::uint64_t>(n), rep)};
            const LatentPath latent = sim.latent(cfg.noise_at(alphas.front()), stream);
            unsigned char* out = rejected.data() + rep * cells;
            std::size_t cell = 0;
            for (std::size_t a = 0; a < alphas.size(); ++a) {
              const NoiseSpec noise = cfg.noise_at(alphas[a]);
              for (double tau : cfg.taus) {
                for (double h : cfg.hs) {
                  SeriesSpec spec = SeriesSpec::make(n, hurst, noise, change_for(cfg.change, h, tau));
                  const std::vector<double> x = sim.compose(spec, latent);
                  for (std::size_t f = 0; f < fam_count; ++f)
                    out[cell++] = run_test(plans[a][f], x, cfg.trim, cvs[a][f]).reject ? 1 : 0;
                }
              }
            }
          },
          cfg.workers);

      for (std::size_t r = 0; r < row_count; ++r) {
        std::vector<CellResult> row(fam_count);
        for (std::size_t f = 0; f < fam_count; ++f) {
          CellResult& c = row[f];
          c.replications = cfg.replications;
          for (std::size_t rep = 0; rep < cfg.replications; ++rep)
            c.rejections += rejected[rep * cells + r * fam_count + f];
          c.rate = static_cast<double>(c.rejections) / static_cast<double>(c.replications);
          c.standard_error = std::sqrt(c.rate * (1.0 - c.rate) / static_cast<double>(c.replications));
        }
        report.cells.push_back(std::move(row));
      }
    }
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

void write_report_csv(std::ostream& os, const ExperimentReport& report) {
  os << "H,n,alpha,tau,h,reps";
  for (Family f : report.config.families) os << ',' << to_string(f) << ',' << to_string(f) << "_se";
  os << '\n';
  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    const GridPoint& p = report.rows[r];
    os << num(p.hurst) << ',' << p.n << ',' << num(p.alpha) << ',' << num(p.tau) << ',' << num(p.h)
       << ',' << report.config.replications;
    for (const CellResult& c : report.cells[r]) os << ',' << num(c.rate) << ',' << num(c.standard_error);
    os << '\n';
  }
}

std::string report_metadata_json(const ExperimentReport& report) {
  json tables = json::array();
  for (const TableProvenance& t : report.tables)
    tables.push_back({{"key", t.key},
                      {"format_version", t.version},
                      {"source", t.source},
                      {"path_count", t.path_count},
                      {"path_length", t.path_length},
                      {"seed", t.seed},
                      {"critical_value", t.critical_value}});
  const json j = {{"name", report.config.name},
                  {"seed", report.config.seed},
                  {"rows", report.rows.size()},
                  {"wall_seconds", report.wall_seconds},
                  {"critical_value_tables", tables},
                  {"config", json::parse(config_to_json(report.config))}};
  return j.dump(2);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    cell.erase(0, cell.find_first_not_of(" \t\r"));
    cell.erase(cell.find_last_not_of(" \t\r") + 1);
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& s, std::size_t line_no) {
  if (s == "NA" || s == "nan" || s.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size())
    throw std::invalid_argument("line " + std::to_string(line_no) + ": not a number '" + s + "'");
  return v;
}

}  // namespace

RateTable read_rate_csv(std::istream& is, std::size_t default_replications) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("empty rate table");
  const std::vector<std::string> header = split_csv_line(line);
  const std::vector<std::string> coords{"H", "n", "alpha", "tau", "h"};
  if (header.size() < coords.size() || !std::equal(coords.begin(), coords.end(), header.begin()))
    throw std::invalid_argument("rate table header must start with H,n,alpha,tau,h");

  RateTable t;
  std::optional<std::size_t> reps_col;
  std::vector<std::size_t> fam_cols;
  for (std::size_t c = coords.size(); c < header.size(); ++c) {
    const std::string& name = header[c];
    if (name == "reps") {
      reps_col = c;
    } else if (name.size() > 3 && name.compare(name.size() - 3, 3, "_se") == 0) {
      continue;
    } else {
      t.families.push_back(parse_family(name));
      fam_cols.push_back(c);
    }
  }

  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(header.size()) + " fields");
    GridPoint p;
    p.hurst = parse_number(cells[0], line_no);
    p.n = static_cast<std::size_t>(parse_number(cells[1], line_no));
    p.alpha = parse_number(cells[2], line_no);
    p.tau = parse_number(cells[3], line_no);
    p.h = parse_number(cells[4], line_no);
    if (t.find_row(p)) throw std::invalid_argument("duplicate row " + p.describe());
    t.rows.push_back(p);
    t.replications.push_back(reps_col ? static_cast<std::size_t>(parse_number(cells[*reps_col], line_no))
                                      : default_replications);
    std::vector<std::optional<double>> rates;
    for (std::size_t c : fam_cols) {
      const double v = parse_number(cells[c], line_no);
      if (std::isnan(v))
        rates.emplace_back(std::nullopt);
      else if (v < 0.0 || v > 1.0)
        throw std::invalid_argument("line " + std::to_string(line_no) + ": rate outside [0, 1]");
      else
        rates.emplace_back(v);
    }
    t.rates.push_back(std::move(rates));
  }
  return t;
}

RateTable load_rate_csv(const std::string& path, std::size_t default_replications) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot read " + path);
  return read_rate_csv(is, default_replications);
}

ComparisonSummary compare_to_reference(const RateTable& local, const RateTable& reference,
                                       double z_threshold) {
  ComparisonSummary s;
  for (std::size_t r = 0; r < local.rows.size(); ++r) {
    const GridPoint& p = local.rows[r];
    const std::optional<std::size_t> ref_row = reference.find_row(p);
    if (!ref_row) throw CoordinateMismatch("reference has no row " + p.describe());
    for (std::size_t f = 0; f < local.families.size(); ++f) {
      const std::optional<double> mine = local.rates[r][f];
      if (!mine) continue;
      const std::optional<double> theirs = reference.rate(*ref_row, local.families[f]);
      if (!theirs)
        throw CoordinateMismatch("reference has no " + std::string(to_string(local.families[f])) +
                                 " value at " + p.describe());
      const double n1 = static_cast<double>(local.replications[r]);
      const double n2 = static_cast<double>(reference.replications[*ref_row]);
      const double pooled = (*mine * n1 + *theirs * n2) / (n1 + n2);
      const double se = std::sqrt(pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2));
      double z = 0.0;
      if (se > 0.0)
        z = (*mine - *theirs) / se;
      else if (*mine != *theirs)
        z = std::numeric_limits<double>::infinity();
      CellComparison c{p, local.families[f], *mine, *theirs, z, std::abs(z) > z_threshold};
      s.flagged += c.flagged ? 1 : 0;
      s.max_abs_z = std::max(s.max_abs_z, std::abs(z));
      s.cells.push_back(c);
    }
  }
  return s;
}

}  // namespace lmsv
