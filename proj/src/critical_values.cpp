#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "lmsv/asymp.hpp"
#include "lmsv/parallel.hpp"

namespace lmsv {

using nlohmann::json;

std::string_view to_string(LimitFamily f) noexcept {
  switch (f) {
    case LimitFamily::CusumBridgeSup: return "bridge_sup";
    case LimitFamily::SnRatio: return "sn_ratio";
  }
  return "?";
}

LimitFamily parse_limit_family(std::string_view s) {
  if (s == "bridge_sup" || s == "bridge-sup") return LimitFamily::CusumBridgeSup;
  if (s == "sn_ratio" || s == "sn-ratio") return LimitFamily::SnRatio;
  throw std::invalid_argument("unknown limit family '" + std::string(s) + "'");
}

namespace {

bool same_level(double a, double b) { return std::abs(a - b) < 1e-9; }

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

double CriticalValueTable::quantile(double level) const {
  for (const auto& [l, v] : quantiles)
    if (same_level(l, level)) return v;
  throw std::out_of_range("critical value table " + key() + " has no level " + fixed(level, 4));
}

std::string CriticalValueTable::key() const { return table_key(family, m, hurst, trim); }

std::string table_key(LimitFamily family, int m, double hurst, const TrimSpec& trim) {
  std::string k = std::string(to_string(family)) + "_m" + std::to_string(m) + "_H" + fixed(hurst, 4);
  if (family == LimitFamily::SnRatio) k += "_trim" + fixed(trim.tau1, 3) + "-" + fixed(trim.tau2, 3);
  return k;
}

std::vector<double> standard_levels(std::span<const double> extra) {
  std::vector<double> out{0.90, 0.95, 0.99};
  for (double l : extra) {
    if (!(l > 0.0 && l < 1.0)) throw std::invalid_argument("quantile levels must lie in (0, 1)");
    if (std::none_of(out.begin(), out.end(), [&](double o) { return same_level(o, l); }))
      out.push_back(l);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double empirical_quantile(std::span<const double> sorted, double level) {
  if (sorted.empty()) throw std::invalid_argument("empirical_quantile: empty sample");
  if (!(level >= 0.0 && level <= 1.0)) throw std::invalid_argument("level must lie in [0, 1]");
  const double pos = level * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

CriticalValueTable critical_values(LimitFamily family, int m, double hurst, TrimSpec trim,
                                   std::span<const double> levels,
                                   const CriticalValueBudget& budget) {
  if (budget.path_count < 10) throw std::invalid_argument("critical values need at least 10 paths");
  if (family == LimitFamily::SnRatio) trim.validate();
  const HermitePathGenerator gen(hurst, m, budget.path_length);
  const RngStream root{budget.seed, hash_combine(hash_combine(static_cast<std::uint64_t>(m),
                                                              hash_double(hurst)),
                                                 static_cast<std::uint64_t>(family))};

  std::vector<double> stats(budget.path_count);
  parallel_for(budget.path_count, [&](std::size_t i) {
    std::vector<double> path(budget.path_length + 1);
    gen.sample(root.child(i), path);
    stats[i] = family == LimitFamily::CusumBridgeSup ? bridge_sup(path) : sn_ratio(path, trim);
  });
  std::sort(stats.begin(), stats.end());

  CriticalValueTable t;
  t.family = family;
  t.m = m;
  t.hurst = hurst;
  t.trim = trim;
  t.source = "simulation";
  t.path_count = budget.path_count;
  t.path_length = budget.path_length;
  t.seed = budget.seed;
  for (double l : standard_levels(levels)) {
    t.quantiles[l] = empirical_quantile(stats, l);
    t.quantiles[1.0 - l] = empirical_quantile(stats, 1.0 - l);
  }
  return t;
}

CriticalValueTable kolmogorov_table(std::span<const double> levels) {
  CriticalValueTable t;
  t.family = LimitFamily::CusumBridgeSup;
  t.m = 1;
  t.hurst = 0.5;
  t.source = "kolmogorov-series";
  for (double l : standard_levels(levels)) {
    t.quantiles[l] = kolmogorov_quantile(l);
    t.quantiles[1.0 - l] = kolmogorov_quantile(1.0 - l);
  }
  return t;
}

std::string to_json(const CriticalValueTable& t) {
  json q = json::array();
  for (const auto& [l, v] : t.quantiles) q.push_back({{"level", l}, {"value", v}});
  json j = {{"format_version", t.version},
            {"key", t.key()},
            {"family", std::string(to_string(t.family))},
            {"m", t.m},
            {"hurst", t.hurst},
            {"trim", {t.trim.tau1, t.trim.tau2}},
            {"quantiles", q},
            {"meta",
             {{"source", t.source},
              {"path_count", t.path_count},
              {"path_length", t.path_length},
              {"seed", t.seed}}}};
  return j.dump(2);
}

CriticalValueTable table_from_json(const std::string& text) {
  const json j = json::parse(text);
  const int version = j.at("format_version").get<int>();
  if (version != CriticalValueTable::kFormatVersion)
    throw std::runtime_error("critical value table format version " + std::to_string(version) +
                             " does not match supported version " +
                             std::to_string(CriticalValueTable::kFormatVersion));
  CriticalValueTable t;
  t.version = version;
  t.family = parse_limit_family(j.at("family").get<std::string>());
  t.m = j.at("m").get<int>();
  t.hurst = j.at("hurst").get<double>();
  t.trim = {j.at("trim").at(0).get<double>(), j.at("trim").at(1).get<double>()};
  for (const auto& e : j.at("quantiles"))
    t.quantiles[e.at("level").get<double>()] = e.at("value").get<double>();
  const json& meta = j.at("meta");
  t.source = meta.at("source").get<std::string>();
  t.path_count = meta.at("path_count").get<std::size_t>();
  t.path_length = meta.at("path_length").get<std::size_t>();
  t.seed = meta.at("seed").get<std::uint64_t>();
  return t;
}

void save_table(const CriticalValueTable& t, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write critical value table to " + path);
  os << to_json(t) << '\n';
}

CriticalValueTable load_table(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read critical value table " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  try {
    return table_from_json(ss.str());
  } catch (const json::exception& e) {
    throw std::runtime_error("malformed critical value table " + path + ": " + e.what());
  }
}

}  // namespace lmsv
